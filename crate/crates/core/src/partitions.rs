//! Integer partitions, stored with parts in non-increasing order.

pub type Partition = Vec<u32>;

/// All partitions of `n` with parts in `[min_part, max_part]`, in
/// reverse-lexicographic order (largest first part first).
pub fn partitions_bounded(n: u32, min_part: u32, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(n, max_part.min(n), min_part.max(1), &mut cur, &mut out);
    out
}

fn rec(n: u32, max_part: u32, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    let mut p = max_part.min(n);
    while p >= min_part {
        cur.push(p);
        rec(n - p, p, min_part, cur, out);
        cur.pop();
        p -= 1;
    }
}

pub fn partitions(n: u32) -> Vec<Partition> {
    partitions_bounded(n, 1, n)
}

pub fn count(n: u32) -> usize {
    partitions(n).len()
}

/// Parses "2,1" style partitions; an empty string is the empty partition.
pub fn parse(s: &str) -> Option<Partition> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    let mut p: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse().ok())
        .collect::<Option<_>>()?;
    if p.contains(&0) {
        return None;
    }
    p.sort_unstable_by(|a, b| b.cmp(a));
    Some(p)
}

/// Inverse of [`parse`]: "2,1".
pub fn render(p: &[u32]) -> String {
    p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn weight(p: &[u32]) -> u32 {
    p.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c: Vec<usize> = (0..=8).map(count).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions_bounded(6, 2, 6).len(), 4);
    }

    #[test]
    fn parse_sorts() {
        assert_eq!(parse("1,2"), Some(vec![2, 1]));
        assert_eq!(parse(""), Some(vec![]));
        assert_eq!(parse("0"), None);
    }
}
