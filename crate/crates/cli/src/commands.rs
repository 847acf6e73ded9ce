use std::fmt::Write;
use std::fs;
use std::path::Path;

use spacetime_games::extensive::{
    enumerate_linearizations, is_spacetime_interpretable, linearize, strategic_form_efg, to_extensive,
    ExtensiveFormGame, InterpretVerdict,
};
use spacetime_games::io::dot::{actual_precedence_dot, precedence_dot, tree_dot};
use spacetime_games::io::table::normal_form_tsv;
use spacetime_games::io::{is_efg_text, parse_efg, parse_game, serialize_efg, serialize_game};
use spacetime_games::{
    backward_induction, check_consistency, enumerate_complete_histories, fixtures, iterated_strict_dominance,
    maximin, pure_nash, reduced_strategic_form, strategic_form, AgentId, DocumentError, GameError,
    NormalFormGame, SpacetimeGame,
};

use crate::{Concept, TreeFormat};

pub enum CliError {
    Io(String),
    Document(DocumentError),
    Game(GameError),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json_line(&self) -> String {
        let (kind, message) = match self {
            CliError::Io(m) => ("io", m.clone()),
            CliError::Document(DocumentError::Syntax { .. }) => ("parse", self.message()),
            CliError::Document(DocumentError::Field { .. }) => ("field", self.message()),
            CliError::Document(_) | CliError::Game(_) => ("validation", self.message()),
            CliError::Usage(m) => ("usage", m.clone()),
        };
        serde_json::json!({ "error": kind, "message": message }).to_string()
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
            CliError::Document(e) => e.to_string(),
            CliError::Game(e) => e.to_string(),
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Document(e)
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Game(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

enum Input {
    Game(SpacetimeGame),
    Efg(ExtensiveFormGame),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    if is_efg_text(&text) {
        Ok(Input::Efg(parse_efg(&text)?))
    } else {
        Ok(Input::Game(parse_game(&text)?))
    }
}

fn load_game(path: &Path) -> Result<SpacetimeGame> {
    match load(path)? {
        Input::Game(g) => Ok(g),
        Input::Efg(_) => Err(CliError::Usage(format!(
            "{} is an extensive-form game; this command needs a spacetime game",
            path.display()
        ))),
    }
}

pub fn validate(path: &Path) -> Result<String> {
    Ok(match load(path)? {
        Input::Game(g) => format!("{}\n", check_consistency(&g)),
        Input::Efg(_) => "valid\n".to_string(),
    })
}

pub fn dag(path: &Path, actual: bool) -> Result<String> {
    let g = load_game(path)?;
    Ok(if actual { actual_precedence_dot(&g) } else { precedence_dot(&g) })
}

fn values(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn histories(path: &Path, payoffs: bool) -> Result<String> {
    let g = load_game(path)?;
    let mut out = String::new();
    for h in enumerate_complete_histories(&g) {
        out.push_str(&g.render(&h));
        if payoffs {
            let v = g.payoff(&h).expect("validated games have total payoffs");
            write!(out, "\t{}", values(v)).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

fn normal_form(input: &Input, reduced: bool) -> Result<NormalFormGame> {
    Ok(match input {
        Input::Game(g) if reduced => reduced_strategic_form(g)?,
        Input::Game(g) => strategic_form(g)?,
        Input::Efg(e) => strategic_form_efg(e)?,
    })
}

pub fn strategic(path: &Path, reduced: bool) -> Result<String> {
    let input = load(path)?;
    if reduced && matches!(input, Input::Efg(_)) {
        return Err(CliError::Usage("reduced forms are defined for spacetime games only".into()));
    }
    Ok(normal_form_tsv(&normal_form(&input, reduced)?))
}

pub fn extensive(path: &Path, k: usize, format: TreeFormat) -> Result<String> {
    let g = load_game(path)?;
    let (lins, _) = enumerate_linearizations(&g, k.saturating_add(1));
    let lin = lins
        .get(k)
        .ok_or_else(|| CliError::Usage(format!("the game has only {} linearization(s)", lins.len())))?;
    let e = to_extensive(&g, lin);
    Ok(match format {
        TreeFormat::Dot => tree_dot(&e),
        TreeFormat::Efg => serialize_efg(&e),
        TreeFormat::Counts => {
            let order: Vec<String> = lin.order().iter().map(|p| p.to_string()).collect();
            format!(
                "linearization\t{}\nchoice_nodes\t{}\noutcomes\t{}\ninformation_sets\t{}\n",
                order.join(","),
                e.nodes.len(),
                e.outcomes.len(),
                e.info_sets.len()
            )
        }
    })
}

pub fn solve(path: &Path, concept: Concept, reduced: bool, agent: Option<&str>) -> Result<String> {
    let input = load(path)?;
    if reduced && matches!(input, Input::Efg(_)) {
        return Err(CliError::Usage("reduced forms are defined for spacetime games only".into()));
    }
    let mut out = String::new();
    match concept {
        Concept::Nash => {
            let nf = normal_form(&input, reduced)?;
            for p in pure_nash(&nf) {
                writeln!(out, "{}", nf.profile_label(&p)).unwrap();
            }
        }
        Concept::Dominance => {
            let nf = normal_form(&input, reduced)?;
            for (i, alive) in iterated_strict_dominance(&nf).iter().enumerate() {
                let labels: Vec<&str> = alive.iter().map(|&s| nf.labels[i][s].as_str()).collect();
                writeln!(out, "{}\t{}", nf.agents[i], labels.join(" ")).unwrap();
            }
        }
        Concept::Maximin => {
            let nf = normal_form(&input, reduced)?;
            let agents: Vec<AgentId> = match agent {
                Some(a) => vec![AgentId::new(a).map_err(|e| CliError::Usage(e.to_string()))?],
                None => nf.agents.clone(),
            };
            for a in agents {
                let m = maximin(&nf, &a)?;
                let i = nf.agent_index(&a).expect("maximin checked the agent");
                let labels: Vec<&str> = m.strategies.iter().map(|&s| nf.labels[i][s].as_str()).collect();
                writeln!(out, "{a}\t{}\t{}", m.value, labels.join(" ")).unwrap();
            }
        }
        Concept::Spe => {
            let e = match input {
                Input::Efg(e) => e,
                Input::Game(g) => to_extensive(&g, &linearize(&g)),
            };
            let plans = backward_induction(&e)?;
            let nf = strategic_form_efg(&e)?;
            for plan in plans {
                writeln!(out, "{}\t{}", nf.profile_label(&plan.profile(&e, &nf)), values(&plan.value)).unwrap();
            }
        }
    }
    Ok(out)
}

pub fn interpret(path: &Path, budget: usize) -> Result<String> {
    let e = match load(path)? {
        Input::Efg(e) => e,
        Input::Game(g) => to_extensive(&g, &linearize(&g)),
    };
    let verdict = is_spacetime_interpretable(&e, budget);
    let mut out = format!("{verdict}\n");
    if let InterpretVerdict::Yes(w) = verdict {
        let order: Vec<String> = w.linearization.order().iter().map(|p| p.to_string()).collect();
        writeln!(out, "linearization\t{}", order.join(",")).unwrap();
        out.push_str(&serialize_game(&w.game));
    }
    Ok(out)
}

pub fn examples(dir: &Path) -> Result<String> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut out = String::new();
    for (name, text) in fixtures::ALL_FILES {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        writeln!(out, "{}", path.display()).unwrap();
    }
    Ok(out)
}
