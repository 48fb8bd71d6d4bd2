use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A group given by its operations. Elements are opaque tokens compared by
/// equality.
pub trait GroupOracle {
    type Elem: Clone + Eq + Hash + Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn label(&self, a: &Self::Elem) -> String;
}

/// Exhaustive associativity check is done up to this order.
const ASSOCIATIVITY_SCAN: usize = 64;

/// A finite group given by a multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", labels[g])))?;
            inverse.push(h);
        }
        for row in &table {
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup("table rows must be permutations".into()));
                }
            }
        }
        if n <= ASSOCIATIVITY_SCAN {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidGroup(format!(
                                "({}{}){} != {}({}{})",
                                labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup { labels, table, identity, inverse })
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("g{k}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(labels, table).expect("cyclic group")
    }

    /// Symmetric group on `k` points; elements are permutations in
    /// lexicographic order and `(ab)(i) = a(b(i))`.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
        loop {
            let mut p = perms.last().unwrap().clone();
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..k).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()]).collect())
            .collect();
        let labels = perms.iter().map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>()).collect();
        FiniteGroup::from_table(labels, table).expect("symmetric group")
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), other.order());
        let labels = (0..n * m).map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m])).collect();
        let table = (0..n * m)
            .map(|a| (0..n * m).map(|b| self.table[a / m][b / m] * m + other.table[a % m][b % m]).collect())
            .collect();
        FiniteGroup::from_table(labels, table).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elem_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    pub fn to_json(&self) -> Value {
        window_json(&self.labels, self.identity, |a, b| Some(self.table[a][b]))
    }

    pub fn from_json(v: &Value) -> Result<FiniteGroup> {
        let w = GroupWindow::from_json(v)?;
        let table = w
            .product
            .iter()
            .map(|row| row.iter().map(|x| x.ok_or_else(|| Error::InvalidGroup("table has gaps".into()))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        FiniteGroup::from_table(w.labels, table)
    }
}

impl GroupOracle for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }

    fn label(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

/// A finite symmetric subset `E` of a group containing `1`, with the products
/// that land back in `E`. Elements are indexed `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWindow {
    labels: Vec<String>,
    identity: usize,
    product: Vec<Vec<Option<usize>>>,
    inverse: Vec<usize>,
    order2: Vec<bool>,
}

fn window_json(labels: &[String], identity: usize, prod: impl Fn(usize, usize) -> Option<usize>) -> Value {
    let n = labels.len();
    let table: Vec<Value> = (0..n)
        .map(|a| Value::Array((0..n).map(|b| prod(a, b).map_or(Value::Null, |c| json!(labels[c]))).collect()))
        .collect();
    json!({"elements": labels, "identity": labels[identity], "table": table})
}

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Input(format!("group element must be a string or number, got {v}"))),
    }
}

impl GroupWindow {
    /// Builds a window from a partial product table. The identity must act
    /// neutrally and every element needs an inverse inside the window.
    pub fn new(labels: Vec<String>, identity: usize, product: Vec<Vec<Option<usize>>>) -> Result<GroupWindow> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Input("empty window".into()));
        }
        if identity >= n || product.len() != n || product.iter().any(|r| r.len() != n) {
            return Err(Error::Input(format!("window table must be {n}x{n}")));
        }
        if product.iter().flatten().flatten().any(|&c| c >= n) {
            return Err(Error::Input("window table entry out of range".into()));
        }
        for g in 0..n {
            if product[identity][g] != Some(g) || product[g][identity] != Some(g) {
                return Err(Error::InvalidGroup(format!("identity does not fix {}", labels[g])));
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| product[g][h] == Some(identity))
                .ok_or_else(|| Error::InvalidGroup(format!("window is not symmetric: {} has no inverse", labels[g])))?;
            if product[h][g] != Some(identity) {
                return Err(Error::InvalidGroup(format!("one-sided inverse for {}", labels[g])));
            }
            inverse.push(h);
        }
        let order2 = (0..n).map(|g| g != identity && inverse[g] == g).collect();
        Ok(GroupWindow { labels, identity, product, inverse, order2 })
    }

    /// The whole group as a window.
    pub fn from_group(g: &FiniteGroup) -> GroupWindow {
        let n = g.order();
        let product = (0..n).map(|a| (0..n).map(|b| Some(g.table[a][b])).collect()).collect();
        GroupWindow::new(g.labels.clone(), g.identity, product).expect("group table")
    }

    /// Window spanned by `elements` of an oracle group, closed under inverses
    /// and containing the identity. Products are recorded when they land in
    /// the window. Returns the window and the element tokens in window order.
    pub fn from_oracle<G: GroupOracle>(group: &G, elements: &[G::Elem]) -> (GroupWindow, Vec<G::Elem>) {
        let mut elems: Vec<G::Elem> = vec![group.identity()];
        let mut index: HashMap<G::Elem, usize> = HashMap::new();
        index.insert(group.identity(), 0);
        for e in elements {
            for x in [e.clone(), group.inv(e)] {
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
        }
        let product =
            elems.iter().map(|a| elems.iter().map(|b| index.get(&group.mul(a, b)).copied()).collect()).collect();
        let labels = elems.iter().map(|e| group.label(e)).collect();
        (GroupWindow::new(labels, 0, product).expect("oracle window"), elems)
    }

    /// `E x F` inside the direct product; element `(a, b)` has index
    /// `a * |F| + b`.
    pub fn product(&self, other: &GroupWindow) -> GroupWindow {
        let m = other.len();
        let n = self.len() * m;
        let labels = (0..n).map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m])).collect();
        let product = (0..n)
            .map(|a| (0..n).map(|b| Some(self.mul(a / m, b / m)? * m + other.mul(a % m, b % m)?)).collect())
            .collect();
        GroupWindow::new(labels, self.identity * m + other.identity, product).expect("product window")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_order2(&self, a: usize) -> bool {
        self.order2[a]
    }

    /// Every product of two window elements is defined.
    pub fn is_closed(&self) -> bool {
        self.product.iter().flatten().all(Option::is_some)
    }

    /// Pairs `(g, h)` whose product lies in the window, and the number of
    /// pairs that do not.
    pub fn defined_pairs(&self) -> (Vec<(usize, usize, usize)>, usize) {
        let n = self.len();
        let mut pairs = Vec::new();
        for g in 0..n {
            for h in 0..n {
                if let Some(k) = self.product[g][h] {
                    pairs.push((g, h, k));
                }
            }
        }
        let skipped = n * n - pairs.len();
        (pairs, skipped)
    }

    pub fn to_json(&self) -> Value {
        window_json(&self.labels, self.identity, |a, b| self.product[a][b])
    }

    pub fn from_json(v: &Value) -> Result<GroupWindow> {
        let obj = v.as_object().ok_or_else(|| Error::Input("window must be a JSON object".into()))?;
        let labels = obj
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("window needs an `elements` array".into()))?
            .iter()
            .map(label_of)
            .collect::<Result<Vec<_>>>()?;
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != labels.len() {
            return Err(Error::Input("window elements must be distinct".into()));
        }
        let lookup = |v: &Value| -> Result<usize> {
            let l = label_of(v)?;
            index.get(l.as_str()).copied().ok_or_else(|| Error::Input(format!("unknown element {l}")))
        };
        let identity = lookup(obj.get("identity").ok_or_else(|| Error::Input("window needs an `identity`".into()))?)?;
        let rows = obj
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("window needs a `table` array".into()))?;
        let product = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Input("table rows must be arrays".into()))?
                    .iter()
                    .map(|x| if x.is_null() { Ok(None) } else { lookup(x).map(Some) })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GroupWindow::new(labels, identity, product)
    }
}
