use extiso::cayley::{brute_force_iso, families, invariant_signature};
use extiso::corpus::corpus;
use extiso::isoengine::{iso_with_strategy, Strategy};
use extiso::{EngineConfig, Error};
use std::sync::Arc;

const STRATEGIES: [Strategy; 4] = [Strategy::CentralRadical, Strategy::ElemAbelianRadical, Strategy::SsProduct1, Strategy::SsProduct2];

#[test]
fn every_applicable_strategy_agrees_with_brute_force() {
    let c = corpus().unwrap();
    let cfg = EngineConfig::default();
    let mut decided = 0;
    for g in &c {
        for h in c.iter().filter(|h| h.group.order() == g.group.order()) {
            let truth = brute_force_iso(&g.group, &h.group, &cfg.caps).unwrap().is_some();
            for s in STRATEGIES {
                match iso_with_strategy(&g.group, &h.group, s, &cfg) {
                    Ok(v) => {
                        assert_eq!(v.is_isomorphic(), truth, "{} vs {} with {}", g.name, h.name, s.label());
                        decided += 1;
                    }
                    Err(Error::StrategyInapplicable { .. }) => {}
                    Err(e) => panic!("{} vs {} with {}: {e}", g.name, h.name, s.label()),
                }
            }
        }
    }
    assert!(decided > 100, "{decided}");
}

#[test]
fn invariant_twins_are_separated() {
    // Z4 x Z4 and Z4 x| Z4 share element order statistics
    let cfg = EngineConfig::default();
    let g = Arc::new(families::abelian(&[4, 4]));
    let h = Arc::new(families::cyclic_semidirect(4, 4, 3));
    let same = invariant_signature(&g) == invariant_signature(&h);
    let v = extiso::isoengine::iso_auto(&g, &h, &cfg).unwrap();
    assert!(!v.is_isomorphic());
    if same {
        assert_ne!(v.strategy, "invariants");
    }
}
