//! Pretty printer producing text accepted by [`parse_model`](super::parse::parse_model).

use super::Pta;

pub fn render_model(pta: &Pta) -> String {
    let mut out = String::new();
    out.push_str(&format!("clocks: {}\n", pta.clocks.join(", ")));
    out.push_str(&format!("params: {}\n", pta.params.join(", ")));
    out.push_str(&format!("domain: time={} param={}\n", pta.time_domain, pta.param_domain));
    for (i, l) in pta.locations.iter().enumerate() {
        let init = if i == pta.initial.0 { " init" } else { "" };
        out.push_str(&format!("loc {}{init} inv: {}\n", l.name, l.invariant.render(&pta.clocks, &pta.params)));
    }
    for t in &pta.transitions {
        out.push_str(&format!(
            "edge {} -> {} : {} ; {} ;",
            pta.locations[t.source.0].name,
            pta.locations[t.target.0].name,
            t.guard.render(&pta.clocks, &pta.params),
            pta.actions[t.action.0]
        ));
        if !t.updates.is_empty() {
            let resets: Vec<String> = t.updates.iter().map(|(c, b)| format!("{}:={b}", pta.clocks[c.0])).collect();
            out.push_str(&format!(" reset {}", resets.join(", ")));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse::parse_model;

    #[test]
    fn round_trip() {
        let text = "clocks: x, y\nparams: p, q\ndomain: time=nat param=int\nloc a init inv: x - y <= p^2 - 1\nloc b inv: true\nedge a -> b : x > 2p + q & y = 3 ; go ; reset y:=0, x:=4\nedge b -> a : -x < -1 ; back ;";
        let pta = parse_model(text).unwrap();
        let again = parse_model(&render_model(&pta)).unwrap();
        assert_eq!(pta, again);
    }
}
