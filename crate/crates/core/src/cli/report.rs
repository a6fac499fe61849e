use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Item {
    Field(String, String),
    Table { name: String, columns: Vec<String>, rows: Vec<(String, Vec<String>)> },
    Verdict { name: String, pass: bool, detail: String },
}

/// Output of one command. Rendered either as aligned text or as a
/// `key=value` record stream; both are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    items: Vec<Item>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), items: Vec::new() }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.items.push(Item::Field(key.into(), value.to_string()));
    }

    pub fn table(&mut self, name: impl Into<String>, columns: Vec<String>, rows: Vec<(String, Vec<String>)>) {
        self.items.push(Item::Table { name: name.into(), columns, rows });
    }

    /// A `p × q` grid with rows `p=..` and columns `q=..`.
    pub fn grid(&mut self, name: impl Into<String>, cells: &BTreeMap<(usize, usize), usize>) {
        let pmax = cells.keys().map(|k| k.0).max().unwrap_or(0);
        let qmax = cells.keys().map(|k| k.1).max().unwrap_or(0);
        let columns = (0..=qmax).map(|q| format!("q={q}")).collect();
        let rows = (0..=pmax)
            .map(|p| {
                let vals = (0..=qmax).map(|q| cells.get(&(p, q)).map_or("0".to_string(), |v| v.to_string())).collect();
                (format!("p={p}"), vals)
            })
            .collect();
        self.table(name, columns, rows);
    }

    /// A single row indexed by degree.
    pub fn degrees(&mut self, name: impl Into<String>, values: &[usize]) {
        let columns = (0..values.len()).map(|k| format!("k={k}")).collect();
        self.table(name, columns, vec![("dim".to_string(), values.iter().map(|v| v.to_string()).collect())]);
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.items.push(Item::Verdict { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| !matches!(i, Item::Verdict { pass: false, .. }))
    }

    pub fn verdicts(&self) -> Vec<(&str, bool)> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Verdict { name, pass, .. } => Some((name.as_str(), *pass)),
                _ => None,
            })
            .collect()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.items.iter().find_map(|i| match i {
            Item::Field(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn render(&self, machine: bool) -> String {
        if machine {
            self.render_machine()
        } else {
            self.render_text()
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        for item in &self.items {
            match item {
                Item::Field(k, v) => writeln!(out, "{k} = {v}").unwrap(),
                Item::Table { name, columns, rows } => {
                    writeln!(out, "{name}:").unwrap();
                    let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
                    let widths: Vec<usize> = (0..columns.len())
                        .map(|j| {
                            rows.iter()
                                .filter_map(|r| r.1.get(j))
                                .map(|s| s.chars().count())
                                .chain([columns[j].chars().count()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    let mut line = format!("  {:w0$}", "");
                    for (c, w) in columns.iter().zip(&widths) {
                        write!(line, "  {c:>w$}").unwrap();
                    }
                    writeln!(out, "{}", line.trim_end()).unwrap();
                    for (label, vals) in rows {
                        let mut line = format!("  {label:w0$}");
                        for (v, w) in vals.iter().zip(&widths) {
                            write!(line, "  {v:>w$}").unwrap();
                        }
                        writeln!(out, "{}", line.trim_end()).unwrap();
                    }
                }
                Item::Verdict { name, pass, detail } => {
                    let tag = if *pass { "pass" } else { "FAIL" };
                    if detail.is_empty() {
                        writeln!(out, "[{tag}] {name}").unwrap();
                    } else {
                        writeln!(out, "[{tag}] {name}: {detail}").unwrap();
                    }
                }
            }
        }
        writeln!(out, "status = {}", if self.passed() { "pass" } else { "fail" }).unwrap();
        out
    }

    fn render_machine(&self) -> String {
        let clean = |s: &str| s.replace(['\n', ' '], "_");
        let mut out = format!("command={}\n", self.command);
        for item in &self.items {
            match item {
                Item::Field(k, v) => writeln!(out, "{}={}", clean(k), v.replace('\n', " ")).unwrap(),
                Item::Table { name, columns, rows } => {
                    for (label, vals) in rows {
                        for (c, v) in columns.iter().zip(vals) {
                            writeln!(out, "{}.{}.{}={}", clean(name), clean(label), clean(c), v).unwrap();
                        }
                    }
                }
                Item::Verdict { name, pass, .. } => {
                    writeln!(out, "verdict.{}={}", clean(name), if *pass { "pass" } else { "fail" }).unwrap()
                }
            }
        }
        writeln!(out, "status={}", if self.passed() { "pass" } else { "fail" }).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_renders_in_both_modes() {
        let mut r = Report::new("dolbeault");
        r.grid("h", &[((0, 0), 1), ((0, 1), 2), ((1, 0), 3), ((1, 1), 4)].into_iter().collect());
        r.verdict("ok", true, "");
        assert_eq!(
            r.render(false),
            "# dolbeault\nh:\n       q=0  q=1\n  p=0    1    2\n  p=1    3    4\n[pass] ok\nstatus = pass\n"
        );
        assert!(r.render(true).contains("h.p=1.q=0=3\n"));
        assert!(r.passed());
        r.verdict("bad", false, "why");
        assert!(!r.passed());
        assert!(r.render(true).ends_with("verdict.bad=fail\nstatus=fail\n"));
    }
}
