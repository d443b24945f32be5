use std::fmt::Display;

/// A plain-text report: `# key=value` configuration lines, then `key=value`
/// results and tables whose columns are space- or tab-separated.
pub struct Report {
    tsv: bool,
    out: String,
}

impl Report {
    pub fn new(command: &str, tsv: bool) -> Self {
        let mut r = Report { tsv, out: String::new() };
        r.config("command", command);
        r
    }

    pub fn config(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.out.push_str(&format!("# {key}={value}\n"));
        self
    }

    pub fn kv(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.out.push_str(&format!("{key}={value}\n"));
        self
    }

    pub fn row<I, T>(&mut self, cols: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: Display,
    {
        let sep = if self.tsv { "\t" } else { " " };
        let cells: Vec<String> = cols.into_iter().map(|c| c.to_string()).collect();
        self.out.push_str(&cells.join(sep));
        self.out.push('\n');
        self
    }

    pub fn raw(&mut self, text: &str) -> &mut Self {
        self.out.push_str(text);
        self
    }

    /// Configuration lines only, for reports rendered elsewhere.
    pub fn config_lines(&self) -> Vec<String> {
        self.out
            .lines()
            .filter_map(|l| l.strip_prefix("# ").map(str::to_string))
            .collect()
    }

    pub fn finish(self) -> String {
        self.out
    }
}
