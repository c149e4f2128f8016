//! `survey`: one CSV row per topology on up to five points.

use std::io::Write;
use std::sync::Arc;

use insertion_core::finite_space::{enumerate_spaces, survey_space, SurveyRow, ENUMERATION_BOUND};
use insertion_core::Error;
use rayon::prelude::*;

use crate::error::CliError;

pub fn survey_rows(max_size: usize) -> Result<Vec<SurveyRow>, CliError> {
    if max_size > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded { n: max_size, limit: ENUMERATION_BOUND }.into());
    }
    let mut rows = Vec::new();
    for n in 1..=max_size {
        let spaces = enumerate_spaces(n)?;
        let batch = spaces
            .into_par_iter()
            .map(|s| survey_space(&Arc::new(s)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.extend(batch);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[SurveyRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::Write { path: "survey output".into(), source: e })?;
    Ok(())
}
