use besselsum_core::Route;

/// Parses `1,2,5`, `1:4` (inclusive) or mixtures such as `-2:-1,3`.
pub fn parse_mu_list(s: &str) -> Result<Vec<i32>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(format!("empty entry in mu list '{s}'"));
        }
        // a leading '-' is a sign, so look for ':' after the first character
        match part[1..].find(':').map(|i| i + 1) {
            Some(i) => {
                let lo: i32 = parse_int(&part[..i])?;
                let hi: i32 = parse_int(&part[i + 1..])?;
                if hi < lo {
                    return Err(format!("empty mu range '{part}'"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse_int(part)?),
        }
    }
    Ok(out)
}

fn parse_int(s: &str) -> Result<i32, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("'{s}' is not an integer"))
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))
}

pub fn parse_x_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(parse_real).collect()
}

/// `start:stop:count`
pub fn parse_range(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:count, got '{s}'"));
    }
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("'{}' is not a count", parts[2]))?;
    if count == 0 {
        return Err("range count must be >= 1".into());
    }
    Ok((parse_real(parts[0])?, parse_real(parts[1])?, count))
}

pub fn linear(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
        .collect()
}

pub fn geometric(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, String> {
    if !(start > 0.0 && stop > 0.0) {
        return Err("geometric range needs positive endpoints".into());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let ratio = (stop / start).ln() / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                stop
            } else {
                start * (ratio * i as f64).exp()
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Series,
    Closed,
    Meijer,
    All,
}

impl Method {
    pub fn routes(self) -> Vec<Route> {
        match self {
            Method::Series => vec![Route::Series],
            Method::Closed => vec![Route::Closed],
            Method::Meijer => vec![Route::Meijer],
            Method::All => Route::ALL.to_vec(),
        }
    }
}

/// A validated evaluation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub mu_list: Vec<i32>,
    pub x_values: Vec<f64>,
    pub method: Method,
}

impl GridSpec {
    pub fn new(mu_list: Vec<i32>, x_values: Vec<f64>, method: Method) -> Result<Self, String> {
        check_mu(&mu_list, method)?;
        if x_values.is_empty() {
            return Err("no x values given (use --x, --x-geom or --x-lin)".into());
        }
        if let Some(bad) = x_values.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(format!("x values must be finite and > 0, got {bad}"));
        }
        Ok(GridSpec {
            mu_list,
            x_values,
            method,
        })
    }

    /// Jobs in output order: mu, then x, then route.
    pub fn jobs(&self) -> Vec<(i32, f64, Route)> {
        let routes = self.method.routes();
        let mut jobs = Vec::new();
        for &mu in &self.mu_list {
            for &x in &self.x_values {
                for &r in &routes {
                    jobs.push((mu, x, r));
                }
            }
        }
        jobs
    }
}

/// mu = 0 is only meaningful for the series route.
pub fn check_mu(mu_list: &[i32], method: Method) -> Result<(), String> {
    if mu_list.is_empty() {
        return Err("empty mu list".into());
    }
    if method != Method::Series && mu_list.contains(&0) {
        return Err(
            "mu = 0 is only supported by --method series: the closed form and the \
             Meijer-G form hold only for mu != 0"
                .into(),
        );
    }
    Ok(())
}
