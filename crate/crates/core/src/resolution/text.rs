//! Line-oriented resolution-data file format:
//!
//! ```text
//! dim 2
//! variant local
//! component 1 6 2 exceptional fiber
//! component 2 4 1 strict fiber
//! stratum 1 -1
//! stratum 1,2 1
//! stratum empty 1
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use super::{
    members_label, Component, ComponentId, ComponentKind, ResolutionData, ResolutionError, Stratum,
    Variant,
};

fn parse_err(line: usize, msg: impl Into<String>) -> ResolutionError {
    ResolutionError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<N: FromStr>(tok: &str, line: usize, what: &str) -> Result<N, ResolutionError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

impl ResolutionData {
    pub fn parse(text: &str) -> Result<Self, ResolutionError> {
        let mut dim = None;
        let mut variant = None;
        let mut components: Vec<Component> = Vec::new();
        let mut strata: Vec<Stratum> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            let Some((&head, rest)) = toks.split_first() else {
                continue;
            };
            match head {
                "dim" => {
                    let [v] = rest else {
                        return Err(parse_err(line, "expected `dim <n>`"));
                    };
                    if dim
                        .replace(parse_num::<u32>(v, line, "dimension")?)
                        .is_some()
                    {
                        return Err(parse_err(line, "duplicate `dim`"));
                    }
                }
                "variant" => {
                    let v = match rest {
                        ["local"] => Variant::Local,
                        ["global"] => Variant::Global,
                        _ => return Err(parse_err(line, "expected `variant local|global`")),
                    };
                    if variant.replace(v).is_some() {
                        return Err(parse_err(line, "duplicate `variant`"));
                    }
                }
                "component" => {
                    let (id, n, v, kind, fiber) =
                        match rest {
                            [id, n, v, kind] => (id, n, v, kind, false),
                            [id, n, v, kind, "fiber"] => (id, n, v, kind, true),
                            _ => return Err(parse_err(
                                line,
                                "expected `component <id> <N> <nu> <exceptional|strict> [fiber]`",
                            )),
                        };
                    let kind = match *kind {
                        "exceptional" => ComponentKind::Exceptional,
                        "strict" => ComponentKind::Strict,
                        other => return Err(parse_err(line, format!("unknown kind '{other}'"))),
                    };
                    let c = Component {
                        id: parse_num(id, line, "component id")?,
                        n_mult: parse_num(n, line, "N")?,
                        v_mult: parse_num(v, line, "nu")?,
                        kind,
                        meets_fiber: fiber,
                    };
                    if c.n_mult < 1 || c.v_mult < 1 {
                        return Err(parse_err(line, "numerical data must be positive"));
                    }
                    if components.iter().any(|d| d.id == c.id) {
                        return Err(parse_err(line, format!("duplicate component id {}", c.id)));
                    }
                    components.push(c);
                }
                "stratum" => {
                    let [ids, chi] = rest else {
                        return Err(parse_err(
                            line,
                            "expected `stratum <id>[,<id>...]|empty <chi>`",
                        ));
                    };
                    let members: BTreeSet<ComponentId> = if *ids == "empty" {
                        BTreeSet::new()
                    } else {
                        let list = ids
                            .split(',')
                            .map(|t| parse_num::<ComponentId>(t, line, "component id"))
                            .collect::<Result<Vec<_>, _>>()?;
                        let set: BTreeSet<_> = list.iter().copied().collect();
                        if set.len() != list.len() {
                            return Err(parse_err(line, "repeated id within stratum"));
                        }
                        set
                    };
                    if strata.iter().any(|s| s.members == members) {
                        return Err(parse_err(
                            line,
                            format!("duplicate stratum {}", members_label(&members)),
                        ));
                    }
                    strata.push(Stratum {
                        members,
                        chi: parse_num(chi, line, "chi")?,
                    });
                }
                other => return Err(parse_err(line, format!("unknown directive '{other}'"))),
            }
        }

        let dim = dim.ok_or_else(|| parse_err(0, "missing `dim`"))?;
        ResolutionData::new(dim, variant.unwrap_or(Variant::Local), components, strata)
    }

    /// Renders in the file format; `header` lines are written as `#` comments.
    pub fn to_text(&self, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            let _ = writeln!(out, "# {h}");
        }
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "variant {}", self.variant);
        for c in &self.components {
            let fiber = if c.meets_fiber { " fiber" } else { "" };
            let _ = writeln!(
                out,
                "component {} {} {} {}{fiber}",
                c.id, c.n_mult, c.v_mult, c.kind
            );
        }
        for s in &self.strata {
            let _ = writeln!(out, "stratum {} {}", members_label(&s.members), s.chi);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# curve x^4(x^2+y^2)
dim 2
variant local
component 1 6 2 exceptional fiber
component 0 4 1 strict fiber
component 2 1 1 strict fiber
component 3 1 1 strict fiber   # branch
stratum 1 -1
stratum 0,1 1
stratum 1,2 1
stratum 1,3 1
";

    #[test]
    fn parse_and_render() {
        let d = ResolutionData::parse(SAMPLE).unwrap();
        assert_eq!(d.dim, 2);
        assert_eq!(d.components.len(), 4);
        assert_eq!(d.chi_of(&[1].into()), -1);
        let again = ResolutionData::parse(&d.to_text(&["round trip".into()])).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn fiber_flag_optional() {
        let d = ResolutionData::parse("dim 1\ncomponent 0 1 1 strict\nstratum empty 1\n").unwrap();
        assert!(!d.components[0].meets_fiber);
        assert!(d.strata[0].members.is_empty());
        assert_eq!(d.variant, Variant::Local);
    }

    #[test]
    fn rejects() {
        let cases = [
            "component 1 1 1 strict\n",
            "dim 2\ncomponent 1 1 1 strict\ncomponent 1 2 1 strict\n",
            "dim 2\ncomponent 1 1 1 strict\nstratum 1 1\nstratum 1 2\n",
            "dim 2\ncomponent 1 1 1 weird\n",
            "dim 2\ncomponent 1 0 1 strict\n",
            "dim 2\nstratum 1,1 1\n",
            "dim 2\nfoo\n",
            "dim 2\ndim 3\n",
        ];
        for c in cases {
            assert!(ResolutionData::parse(c).is_err(), "{c}");
        }
        let unknown = ResolutionData::parse("dim 2\ncomponent 1 1 1 strict\nstratum 1,4 1\n");
        assert!(matches!(unknown, Err(ResolutionError::BadData(_))));
    }
}
