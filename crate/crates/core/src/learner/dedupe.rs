use super::{IdentifiedFamilies, IdentifiedMember};
use crate::class::TaskClass;

/// Collapses repeated members within each step, keeping first-seen order and
/// merging provenance.
///
/// Members of one `Ξ_t` with different ids are distinct distributions by
/// construction (classes reject duplicate hypotheses), so equal ids are
/// exactly the zero-TV duplicates.
pub fn dedupe_families(ident: &IdentifiedFamilies, class: &TaskClass) -> IdentifiedFamilies {
    debug_assert_eq!(ident.steps.len(), class.steps());
    let steps = ident
        .steps
        .iter()
        .map(|members| {
            let mut out: Vec<IdentifiedMember> = Vec::new();
            for m in members {
                match out.iter_mut().find(|o| o.id == m.id) {
                    Some(o) => o.sources.extend_from_slice(&m.sources),
                    None => out.push(m.clone()),
                }
            }
            out
        })
        .collect();
    IdentifiedFamilies {
        steps,
        per_task: ident.per_task.clone(),
        dedup_applied: true,
    }
}
