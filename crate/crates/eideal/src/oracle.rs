//! Multithreaded Hochster subset scan.

use eideal_core::graph::Graph;
use eideal_core::homology::{hochster_scan, BettiScan, OracleConfig, OracleError, OracleValues};
use rayon::prelude::*;

const CHUNK: u64 = 1 << 10;

/// Same table as [`eideal_core::homology::hochster_scan_all`], with the
/// subsets split into chunks scanned on the rayon pool.
pub fn par_hochster_scan(g: &Graph, cfg: &OracleConfig) -> Result<BettiScan, OracleError> {
    if g.vertex_count() > cfg.max_vertices.min(63) {
        return Err(OracleError::CapExceeded {
            vertices: g.vertex_count(),
            cap: cfg.max_vertices.min(63),
        });
    }
    let end = 1u64 << g.vertex_count();
    let starts: Vec<u64> = (1..end).step_by(CHUNK as usize).collect();
    let mut scan = starts
        .into_par_iter()
        .map(|s| hochster_scan(g, cfg, s..(s + CHUNK).min(end)))
        .try_reduce(
            || BettiScan {
                table: eideal_core::BettiTable::new(g.vertex_count()),
                ..Default::default()
            },
            |mut a, b| {
                a.merge(&b);
                Ok(a)
            },
        )?;
    scan.table.add(0, 0, 1);
    Ok(scan)
}

pub fn par_oracle_values(
    g: &Graph,
    cfg: &OracleConfig,
) -> Result<(OracleValues, BettiScan), OracleError> {
    let scan = par_hochster_scan(g, cfg)?;
    Ok((OracleValues::from_table(g, &scan.table), scan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use eideal_core::homology::hochster_scan_all;

    #[test]
    fn matches_sequential_scan() {
        for g in [
            Graph::cycle(11, "c").unwrap(),
            Graph::path(12, "p").unwrap(),
            Graph::path(1, "p").unwrap(),
        ] {
            let cfg = OracleConfig::default();
            assert_eq!(
                par_hochster_scan(&g, &cfg).unwrap(),
                hochster_scan_all(&g, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn refuses_above_cap() {
        let cfg = OracleConfig {
            max_vertices: 5,
            ..Default::default()
        };
        assert!(matches!(
            par_hochster_scan(&Graph::path(6, "p").unwrap(), &cfg),
            Err(OracleError::CapExceeded {
                vertices: 6,
                cap: 5
            })
        ));
    }
}
