use std::fmt;

/// A node of a link expression. Labels are 1-based component indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    /// `P^m(i)`: connected sum of `|m|` standard projective planes; empty for `m = 0`.
    ProjectivePlanes { m: i64, i: usize },
    /// `S^{p,q}(i,j)`.
    Strand { p: i64, q: i64, i: usize, j: usize },
    /// `N^p(i,j; k_1..k_m)`.
    Necklace { p: i64, i: usize, j: usize, beads: Vec<usize> },
    DisjointUnion(Vec<Node>),
    Mirror(Box<Node>),
    /// Component `a` becomes `perm[a - 1]`.
    Relabel(Box<Node>, Vec<usize>),
}

/// A link expression together with its ambient component count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkExpression {
    pub n: usize,
    pub root: Node,
}

impl Node {
    pub fn empty() -> Node {
        Node::DisjointUnion(Vec::new())
    }

    pub fn max_label(&self) -> usize {
        match self {
            Node::ProjectivePlanes { i, .. } => *i,
            Node::Strand { i, j, .. } => (*i).max(*j),
            Node::Necklace { i, j, beads, .. } => beads.iter().copied().fold((*i).max(*j), usize::max),
            Node::DisjointUnion(children) => children.iter().map(Node::max_label).max().unwrap_or(0),
            Node::Mirror(child) => child.max_label(),
            Node::Relabel(child, perm) => child.max_label().max(perm.len()),
        }
    }

    /// Checks labels against `1..=n` and that every relabeling is a bijection.
    pub fn validate(&self, n: usize) -> Result<(), String> {
        let check = |l: usize| {
            if l == 0 || l > n {
                Err(format!("label {l} out of range 1..={n}"))
            } else {
                Ok(())
            }
        };
        match self {
            Node::ProjectivePlanes { i, .. } => check(*i),
            Node::Strand { i, j, .. } => check(*i).and(check(*j)),
            Node::Necklace { i, j, beads, .. } => {
                check(*i)?;
                check(*j)?;
                beads.iter().try_for_each(|&k| check(k))
            }
            Node::DisjointUnion(children) => children.iter().try_for_each(|c| c.validate(n)),
            Node::Mirror(child) => child.validate(n),
            Node::Relabel(child, perm) => {
                if perm.len() != n {
                    return Err(format!("relabeling has length {} but n={n}", perm.len()));
                }
                let mut seen = vec![false; n + 1];
                for &p in perm {
                    check(p)?;
                    if std::mem::replace(&mut seen[p], true) {
                        return Err(format!("relabeling is not a bijection: {p} hit twice"));
                    }
                }
                child.validate(n)
            }
        }
    }
}

impl LinkExpression {
    pub fn new(n: usize, root: Node) -> Result<Self, String> {
        if n == 0 {
            return Err("component count must be at least 1".into());
        }
        root.validate(n)?;
        Ok(Self { n, root })
    }

    /// Text with an explicit `n=` header, so it re-parses to the same value.
    pub fn to_text(&self) -> String {
        format!("n={}; {}", self.n, self.root)
    }
}

fn fmt_operand(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match node {
        Node::DisjointUnion(children) if children.len() > 1 => write!(f, "({node})"),
        _ => write!(f, "{node}"),
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::ProjectivePlanes { m, i } => write!(f, "P[{m}]({i})"),
            Node::Strand { p, q: 0, i, j } => write!(f, "S[{p}]({i},{j})"),
            Node::Strand { p, q, i, j } => write!(f, "S[{p},{q}]({i},{j})"),
            Node::Necklace { p, i, j, beads } => {
                write!(f, "N[{p}]({i},{j}")?;
                if !beads.is_empty() {
                    let b: Vec<String> = beads.iter().map(|k| k.to_string()).collect();
                    write!(f, ";{}", b.join(","))?;
                }
                write!(f, ")")
            }
            Node::DisjointUnion(children) => {
                if children.is_empty() {
                    return write!(f, "0");
                }
                for (idx, c) in children.iter().enumerate() {
                    if idx > 0 {
                        write!(f, " + ")?;
                    }
                    fmt_operand(c, f)?;
                }
                Ok(())
            }
            Node::Mirror(child) => write!(f, "Mirror({child})"),
            Node::Relabel(child, perm) => {
                write!(f, "Relabel({child}")?;
                let maps: Vec<String> = perm
                    .iter()
                    .enumerate()
                    .filter(|(a, b)| a + 1 != **b)
                    .map(|(a, b)| format!("{}->{}", a + 1, b))
                    .collect();
                if !maps.is_empty() {
                    write!(f, "; {}", maps.join(", "))?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for LinkExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}
