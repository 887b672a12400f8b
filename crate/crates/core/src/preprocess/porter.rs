//! The classic five-step Porter suffix-stripping stemmer, as originally
//! published (no later extensions such as `logi -> log`).
//!
//! Operates on lowercase ASCII words. Anything else is returned unchanged.

/// Porter stem of `word`.
pub fn stem(word: &str) -> String {
    if word.is_empty() || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = word.as_bytes().to_vec();
    step1a(&mut w);
    step1b(&mut w);
    step1c(&mut w);
    step2(&mut w);
    step3(&mut w);
    step4(&mut w);
    step5a(&mut w);
    step5b(&mut w);
    String::from_utf8(w).expect("ascii in, ascii out")
}

fn is_vowel_letter(b: u8) -> bool {
    matches!(b, b'a' | b'e' | b'i' | b'o' | b'u')
}

fn is_consonant(w: &[u8], i: usize) -> bool {
    match w[i] {
        b if is_vowel_letter(b) => false,
        b'y' => i == 0 || !is_consonant(w, i - 1),
        _ => true,
    }
}

/// `m` in `[C](VC){m}[V]`.
fn measure(w: &[u8]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..w.len() {
        let cons = is_consonant(w, i);
        if cons && prev_vowel {
            m += 1;
        }
        prev_vowel = !cons;
    }
    m
}

fn contains_vowel(w: &[u8]) -> bool {
    (0..w.len()).any(|i| !is_consonant(w, i))
}

fn ends_double_consonant(w: &[u8]) -> bool {
    let n = w.len();
    n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1)
}

/// `*o`: ends consonant-vowel-consonant, last consonant not w, x or y.
fn ends_cvc(w: &[u8]) -> bool {
    let n = w.len();
    n >= 3
        && is_consonant(w, n - 3)
        && !is_consonant(w, n - 2)
        && is_consonant(w, n - 1)
        && !matches!(w[n - 1], b'w' | b'x' | b'y')
}

type Condition = fn(&[u8]) -> bool;

fn m_gt_0(stem: &[u8]) -> bool {
    measure(stem) > 0
}

fn m_gt_1(stem: &[u8]) -> bool {
    measure(stem) > 1
}

/// Applies the first rule whose suffix matches. If that rule's condition
/// fails, no later rule is tried.
fn apply_rules(w: &mut Vec<u8>, rules: &[(&str, &str, Option<Condition>)]) -> bool {
    for &(suffix, replacement, cond) in rules {
        if w.ends_with(suffix.as_bytes()) {
            let stem_len = w.len() - suffix.len();
            if cond.is_none_or(|c| c(&w[..stem_len])) {
                w.truncate(stem_len);
                w.extend_from_slice(replacement.as_bytes());
                return true;
            }
            return false;
        }
    }
    false
}

fn step1a(w: &mut Vec<u8>) {
    apply_rules(
        w,
        &[("sses", "ss", None), ("ies", "i", None), ("ss", "ss", None), ("s", "", None)],
    );
}

fn step1b(w: &mut Vec<u8>) {
    if w.ends_with(b"eed") {
        let stem_len = w.len() - 3;
        if measure(&w[..stem_len]) > 0 {
            w.truncate(stem_len + 2);
        }
        return;
    }
    let mut removed = false;
    for suffix in [&b"ed"[..], &b"ing"[..]] {
        if w.ends_with(suffix) && contains_vowel(&w[..w.len() - suffix.len()]) {
            w.truncate(w.len() - suffix.len());
            removed = true;
            break;
        }
    }
    if !removed {
        return;
    }
    if w.ends_with(b"at") || w.ends_with(b"bl") || w.ends_with(b"iz") {
        w.push(b'e');
    } else if ends_double_consonant(w) {
        if !matches!(w[w.len() - 1], b'l' | b's' | b'z') {
            w.pop();
        }
    } else if measure(w) == 1 && ends_cvc(w) {
        w.push(b'e');
    }
}

fn step1c(w: &mut [u8]) {
    if w.ends_with(b"y") && contains_vowel(&w[..w.len() - 1]) {
        let n = w.len();
        w[n - 1] = b'i';
    }
}

fn step2(w: &mut Vec<u8>) {
    let c: Option<Condition> = Some(m_gt_0);
    apply_rules(
        w,
        &[
            ("ational", "ate", c),
            ("tional", "tion", c),
            ("enci", "ence", c),
            ("anci", "ance", c),
            ("izer", "ize", c),
            ("abli", "able", c),
            ("alli", "al", c),
            ("entli", "ent", c),
            ("eli", "e", c),
            ("ousli", "ous", c),
            ("ization", "ize", c),
            ("ation", "ate", c),
            ("ator", "ate", c),
            ("alism", "al", c),
            ("iveness", "ive", c),
            ("fulness", "ful", c),
            ("ousness", "ous", c),
            ("aliti", "al", c),
            ("iviti", "ive", c),
            ("biliti", "ble", c),
        ],
    );
}

fn step3(w: &mut Vec<u8>) {
    let c: Option<Condition> = Some(m_gt_0);
    apply_rules(
        w,
        &[
            ("icate", "ic", c),
            ("ative", "", c),
            ("alize", "al", c),
            ("iciti", "ic", c),
            ("ical", "ic", c),
            ("ful", "", c),
            ("ness", "", c),
        ],
    );
}

fn ion_condition(stem: &[u8]) -> bool {
    measure(stem) > 1 && matches!(stem.last(), Some(b's' | b't'))
}

fn step4(w: &mut Vec<u8>) {
    let c: Option<Condition> = Some(m_gt_1);
    apply_rules(
        w,
        &[
            ("al", "", c),
            ("ance", "", c),
            ("ence", "", c),
            ("er", "", c),
            ("ic", "", c),
            ("able", "", c),
            ("ible", "", c),
            ("ant", "", c),
            ("ement", "", c),
            ("ment", "", c),
            ("ent", "", c),
            ("ion", "", Some(ion_condition)),
            ("ou", "", c),
            ("ism", "", c),
            ("ate", "", c),
            ("iti", "", c),
            ("ous", "", c),
            ("ive", "", c),
            ("ize", "", c),
        ],
    );
}

fn step5a(w: &mut Vec<u8>) {
    if w.ends_with(b"e") {
        let stem = &w[..w.len() - 1];
        let m = measure(stem);
        if m > 1 || (m == 1 && !ends_cvc(stem)) {
            w.pop();
        }
    }
}

fn step5b(w: &mut Vec<u8>) {
    if w.ends_with(b"ll") && measure(&w[..w.len() - 1]) > 1 {
        w.pop();
    }
}
