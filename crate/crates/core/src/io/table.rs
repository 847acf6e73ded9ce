//! Tab-separated renderings of strategic forms.

use crate::strategic::NormalFormGame;

/// One header row, then one row per cell: each agent's strategy label,
/// each agent's payoff, and the cell's history.
pub fn normal_form_tsv(nf: &NormalFormGame) -> String {
    let mut header: Vec<String> = nf.agents.iter().map(|a| a.to_string()).collect();
    header.extend(nf.agents.iter().map(|a| format!("u({a})")));
    header.push("history".to_string());
    let mut out = header.join("\t");
    out.push('\n');
    for (cell, profile) in nf.profiles().enumerate() {
        let mut row: Vec<String> = profile.iter().zip(&nf.labels).map(|(&s, l)| l[s].clone()).collect();
        row.extend(nf.payoffs[cell].iter().map(|v| v.to_string()));
        row.push(nf.annotations[cell].clone());
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}
