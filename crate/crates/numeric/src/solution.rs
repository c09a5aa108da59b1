//! Sample tables and their CSV form.

use std::io::Write;

use num_complex::Complex64;

use crate::NumericError;

/// Value and derivatives `[y, y', y'', y''']` at one point of the path.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    /// Global path parameter.
    pub s: f64,
    pub lambda: Complex64,
    pub values: Vec<Complex64>,
    /// Local error estimate of the step that produced this sample.
    pub error: f64,
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NumericSolution {
    pub samples: Vec<Sample>,
}

impl NumericSolution {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("a solution has at least its start sample")
    }

    pub fn max_residual(&self) -> f64 {
        self.samples.iter().filter_map(|s| s.residual).fold(0.0, f64::max)
    }

    /// Columns `s, re_lambda, im_lambda, re_d0, im_d0, …, error, residual`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), NumericError> {
        let csv_err = |e: csv::Error| NumericError::Csv(e.to_string());
        let mut out = csv::Writer::from_writer(w);
        let width = self.samples.iter().map(|s| s.values.len()).max().unwrap_or(0);
        let mut header = vec!["s".to_string(), "re_lambda".into(), "im_lambda".into()];
        for j in 0..width {
            header.push(format!("re_d{j}"));
            header.push(format!("im_d{j}"));
        }
        header.push("error".into());
        header.push("residual".into());
        out.write_record(&header).map_err(csv_err)?;
        for s in &self.samples {
            let mut row = vec![s.s.to_string(), s.lambda.re.to_string(), s.lambda.im.to_string()];
            for j in 0..width {
                match s.values.get(j) {
                    Some(v) => {
                        row.push(v.re.to_string());
                        row.push(v.im.to_string());
                    }
                    None => row.extend([String::new(), String::new()]),
                }
            }
            row.push(s.error.to_string());
            row.push(s.residual.map(|r| r.to_string()).unwrap_or_default());
            out.write_record(&row).map_err(csv_err)?;
        }
        out.flush().map_err(|e| NumericError::Csv(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String, NumericError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| NumericError::Csv(e.to_string()))
    }
}
