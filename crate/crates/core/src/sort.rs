use crate::error::{Error, Result};

/// Stable counting sort of `(item, key)` pairs by key, `0 <= key <= key_bound`.
pub fn counting_sort<T: Copy>(items: &[(T, usize)], key_bound: usize) -> Result<Vec<T>> {
    if let Some(&(_, key)) = items.iter().find(|(_, k)| *k > key_bound) {
        return Err(Error::KeyOutOfBound {
            key,
            bound: key_bound,
        });
    }
    if items.is_empty() {
        return Ok(Vec::new());
    }
    let mut start = vec![0usize; key_bound + 2];
    for &(_, k) in items {
        start[k + 1] += 1;
    }
    for k in 1..start.len() {
        start[k] += start[k - 1];
    }
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for &(item, k) in items {
        out[start[k]] = Some(item);
        start[k] += 1;
    }
    Ok(out.into_iter().map(|x| x.expect("every slot filled")).collect())
}
