//! Porter suffix-stripping stemmer.
//!
//! Implements the original 1980 algorithm in the form of the reference
//! distribution (including its `bli -> ble` and `logi -> log` departures
//! from the published rule list). Operates on lowercase ASCII words;
//! anything else is returned unchanged, as are words of one or two
//! letters.

/// Stem a single token.
pub fn stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = Word {
        b: word.as_bytes().to_vec(),
    };
    w.step1a();
    w.step1b();
    w.step1c();
    w.step2();
    w.step3();
    w.step4();
    w.step5a();
    w.step5b();
    String::from_utf8(w.b).expect("stemmer operates on ascii")
}

struct Word {
    b: Vec<u8>,
}

fn is_consonant(b: &[u8], i: usize) -> bool {
    match b[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant(b, i - 1),
        _ => true,
    }
}

/// The measure m of a stem: the number of vowel-consonant sequences in
/// `[C](VC)^m[V]`.
fn measure(b: &[u8]) -> usize {
    let n = b.len();
    let mut i = 0;
    let mut m = 0;
    while i < n && is_consonant(b, i) {
        i += 1;
    }
    loop {
        while i < n && !is_consonant(b, i) {
            i += 1;
        }
        if i == n {
            return m;
        }
        m += 1;
        while i < n && is_consonant(b, i) {
            i += 1;
        }
        if i == n {
            return m;
        }
    }
}

fn has_vowel(b: &[u8]) -> bool {
    (0..b.len()).any(|i| !is_consonant(b, i))
}

fn ends_double_consonant(b: &[u8]) -> bool {
    let n = b.len();
    n >= 2 && b[n - 1] == b[n - 2] && is_consonant(b, n - 1)
}

/// `*o` condition: stem ends consonant-vowel-consonant where the final
/// consonant is not w, x or y.
fn ends_cvc(b: &[u8]) -> bool {
    let n = b.len();
    n >= 3
        && is_consonant(b, n - 3)
        && !is_consonant(b, n - 2)
        && is_consonant(b, n - 1)
        && !matches!(b[n - 1], b'w' | b'x' | b'y')
}

impl Word {
    fn ends(&self, suffix: &[u8]) -> bool {
        self.b.len() > suffix.len() && self.b.ends_with(suffix)
    }

    fn stem_before(&self, suffix_len: usize) -> &[u8] {
        &self.b[..self.b.len() - suffix_len]
    }

    fn replace(&mut self, suffix_len: usize, with: &[u8]) {
        let keep = self.b.len() - suffix_len;
        self.b.truncate(keep);
        self.b.extend_from_slice(with);
    }

    fn step1a(&mut self) {
        if self.ends(b"sses") {
            self.replace(4, b"ss");
        } else if self.ends(b"ies") {
            self.replace(3, b"i");
        } else if self.ends(b"ss") {
            // unchanged
        } else if self.ends(b"s") {
            self.replace(1, b"");
        }
    }

    fn step1b(&mut self) {
        if self.ends(b"eed") {
            if measure(self.stem_before(3)) > 0 {
                self.replace(3, b"ee");
            }
        } else if self.ends(b"ed") && has_vowel(self.stem_before(2)) {
            self.replace(2, b"");
            self.step1b_cleanup();
        } else if self.ends(b"ing") && has_vowel(self.stem_before(3)) {
            self.replace(3, b"");
            self.step1b_cleanup();
        }
    }

    fn step1b_cleanup(&mut self) {
        if self.ends(b"at") || self.ends(b"bl") || self.ends(b"iz") {
            self.b.push(b'e');
        } else if ends_double_consonant(&self.b)
            && !matches!(self.b[self.b.len() - 1], b'l' | b's' | b'z')
        {
            self.b.pop();
        } else if measure(&self.b) == 1 && ends_cvc(&self.b) {
            self.b.push(b'e');
        }
    }

    fn step1c(&mut self) {
        if self.ends(b"y") && has_vowel(self.stem_before(1)) {
            self.replace(1, b"i");
        }
    }

    /// Apply the first (longest) matching rule whose stem has measure above
    /// `min_m`; a match with a failing condition still ends the step.
    fn apply_rules(&mut self, rules: &[(&[u8], &[u8])], min_m: usize) {
        for &(suffix, with) in rules {
            if self.ends(suffix) {
                if measure(self.stem_before(suffix.len())) > min_m {
                    self.replace(suffix.len(), with);
                }
                return;
            }
        }
    }

    fn step2(&mut self) {
        const RULES: &[(&[u8], &[u8])] = &[
            (b"ational", b"ate"),
            (b"ization", b"ize"),
            (b"iveness", b"ive"),
            (b"fulness", b"ful"),
            (b"ousness", b"ous"),
            (b"tional", b"tion"),
            (b"biliti", b"ble"),
            (b"entli", b"ent"),
            (b"ousli", b"ous"),
            (b"ation", b"ate"),
            (b"alism", b"al"),
            (b"aliti", b"al"),
            (b"iviti", b"ive"),
            (b"enci", b"ence"),
            (b"anci", b"ance"),
            (b"izer", b"ize"),
            (b"alli", b"al"),
            (b"ator", b"ate"),
            (b"logi", b"log"),
            (b"bli", b"ble"),
            (b"eli", b"e"),
        ];
        self.apply_rules(RULES, 0);
    }

    fn step3(&mut self) {
        const RULES: &[(&[u8], &[u8])] = &[
            (b"icate", b"ic"),
            (b"ative", b""),
            (b"alize", b"al"),
            (b"iciti", b"ic"),
            (b"ical", b"ic"),
            (b"ful", b""),
            (b"ness", b""),
        ];
        self.apply_rules(RULES, 0);
    }

    fn step4(&mut self) {
        const SUFFIXES: &[&[u8]] = &[
            b"ement", b"ance", b"ence", b"able", b"ible", b"ment", b"ion", b"ant", b"ent",
            b"ism", b"ate", b"iti", b"ous", b"ive", b"ize", b"al", b"er", b"ic", b"ou",
        ];
        for &suffix in SUFFIXES {
            if self.ends(suffix) {
                let stem = self.stem_before(suffix.len());
                // "ion" is only stripped after s or t.
                if suffix == b"ion" && !matches!(stem.last(), Some(b's') | Some(b't')) {
                    return;
                }
                if measure(stem) > 1 {
                    self.replace(suffix.len(), b"");
                }
                return;
            }
        }
    }

    fn step5a(&mut self) {
        if self.ends(b"e") {
            let stem = self.stem_before(1);
            let m = measure(stem);
            if m > 1 || (m == 1 && !ends_cvc(stem)) {
                self.replace(1, b"");
            }
        }
    }

    fn step5b(&mut self) {
        if measure(&self.b) > 1
            && ends_double_consonant(&self.b)
            && self.b[self.b.len() - 1] == b'l'
        {
            self.b.pop();
        }
    }
}
