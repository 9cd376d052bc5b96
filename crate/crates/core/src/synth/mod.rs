//! Seeded generator of IME-style reports with gold PII spans.
//!
//! Documents in one corpus share templates and headings. Every PII value is
//! inserted at a whitespace-delimited slot and recorded as a gold span. Body
//! text also carries non-PII look-alikes such as `5/5` strength grades,
//! `7/10` pain scores and bare years.

mod lexicon;

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{
    write_corpus_dir, AnnotatedDocument, Corpus, Document, ParseError, ParseStats, PiiCategory,
};
use crate::rng::SplitMix64;

pub use lexicon::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub doc_count: usize,
    pub seed: u64,
    /// Number of distinct report layouts drawn from.
    pub structural_variants: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            doc_count: 50,
            seed: 42,
            structural_variants: 3,
        }
    }
}

/// Number of distinct report layouts. Larger `structural_variants` values
/// repeat layouts.
pub const DISTINCT_LAYOUTS: usize = 12;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("doc_count must be at least 2, got {0}")]
    TooFewDocuments(usize),
    #[error("structural_variants must be at least 1")]
    NoVariants,
    #[error("generated document {id} failed validation: {source}")]
    Invalid {
        id: String,
        #[source]
        source: ParseError,
    },
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.doc_count < 2 {
            return Err(SynthError::TooFewDocuments(self.doc_count));
        }
        if self.structural_variants == 0 {
            return Err(SynthError::NoVariants);
        }
        Ok(())
    }
}

/// Summary written next to a generated corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub seed: u64,
    pub doc_count: usize,
    pub structural_variants: usize,
    pub span_total: usize,
    pub spans_per_category: BTreeMap<PiiCategory, usize>,
    pub files: Vec<String>,
}

impl Manifest {
    pub fn new(config: &SynthConfig, corpus: &Corpus) -> Self {
        let spans_per_category = corpus.category_counts();
        Self {
            version: 1,
            seed: config.seed,
            doc_count: corpus.len(),
            structural_variants: config.structural_variants,
            span_total: spans_per_category.values().sum(),
            spans_per_category,
            files: corpus.ids().iter().map(|id| format!("{id}.txt")).collect(),
        }
    }
}

/// Write the corpus in the annotated text format plus `manifest.json`.
pub fn write_synth_corpus(
    config: &SynthConfig,
    corpus: &Corpus,
    dir: &Path,
) -> io::Result<Manifest> {
    write_corpus_dir(corpus, dir)?;
    let manifest = Manifest::new(config, corpus);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(manifest)
}

pub fn generate_corpus(config: &SynthConfig) -> Result<Corpus, SynthError> {
    config.validate()?;
    let mut master = SplitMix64::new(config.seed);
    let examiners: Vec<Examiner> = (0..2).map(|_| Examiner::draw(&mut master)).collect();
    let mut docs = Vec::with_capacity(config.doc_count);
    let mut stats = ParseStats::default();
    for i in 0..config.doc_count {
        let id = format!("ime_{:04}", i + 1);
        let mut rng = SplitMix64::new(master.next_u64());
        let variant = rng.below(config.structural_variants);
        let (text, spans) = ReportWriter::new(&mut rng, &examiners, variant).write();
        let doc = AnnotatedDocument::from_char_spans(Document::new(&id, text), &spans, &mut stats)
            .map_err(|source| SynthError::Invalid {
                id: id.clone(),
                source,
            })?;
        docs.push(doc);
    }
    debug_assert_eq!(stats.snapped_spans, 0);
    Ok(Corpus::new(docs).expect("generated ids are unique"))
}

#[derive(Debug, Clone)]
struct Examiner {
    name: String,
    credential: &'static str,
    practice: String,
    city: String,
    license: String,
    phone: String,
}

impl Examiner {
    fn draw(rng: &mut SplitMix64) -> Self {
        let state = rng.pick(STATE_ABBREVIATIONS);
        Self {
            name: format!("{} {}", rng.pick(GIVEN_NAMES), surname(rng)),
            credential: if rng.chance(3, 4) { "M.D." } else { "D.O." },
            practice: facility(rng),
            city: format!("{}, {state}", town(rng)),
            license: format!("{state}-{:05}", rng.below(100_000)),
            phone: phone(rng),
        }
    }
}

fn facility(rng: &mut SplitMix64) -> String {
    let pattern = *rng.pick(FACILITY_PATTERNS);
    let (town, surname) = (town(rng), surname(rng));
    pattern
        .replace("{town}", &town)
        .replace("{surname}", &surname)
}

fn surname(rng: &mut SplitMix64) -> String {
    if rng.chance(1, 2) {
        rng.pick(SURNAMES).to_string()
    } else {
        format!("{}{}", rng.pick(SURNAME_HEADS), rng.pick(SURNAME_TAILS))
    }
}

fn town(rng: &mut SplitMix64) -> String {
    if rng.chance(1, 2) {
        rng.pick(TOWNS).to_string()
    } else {
        format!("{}{}", rng.pick(TOWN_HEADS), rng.pick(TOWN_TAILS))
    }
}

fn phone(rng: &mut SplitMix64) -> String {
    let (a, b, c) = (
        rng.range_inclusive(201, 989),
        rng.range_inclusive(200, 999),
        rng.below(10_000),
    );
    if rng.chance(1, 3) {
        format!("({a}) {b}-{c:04}")
    } else {
        format!("{a}-{b}-{c:04}")
    }
}

fn date(rng: &mut SplitMix64, long_form: bool) -> String {
    let (m, d, y) = (
        rng.range_inclusive(1, 12),
        rng.range_inclusive(1, 28),
        rng.range_inclusive(1998, 2021),
    );
    match (long_form, rng.below(3)) {
        (true, _) | (false, 0) => format!("{} {d}, {y}", MONTHS[m - 1]),
        (false, 1) => format!("{m}/{d}/{y}"),
        _ => format!("{m:02}/{d:02}/{y}"),
    }
}

fn short_date(rng: &mut SplitMix64) -> String {
    let (m, d) = (rng.range_inclusive(1, 12), rng.range_inclusive(1, 28));
    if rng.chance(1, 2) {
        format!("{} {d}", MONTHS[m - 1])
    } else {
        format!("{m}/{d}")
    }
}

fn address(rng: &mut SplitMix64) -> String {
    let street = rng
        .pick(STREET_PATTERNS)
        .replace("{street}", rng.pick(STREET_NAMES));
    let number = rng.range_inclusive(10, 9999);
    let suite = if rng.chance(1, 4) {
        format!(", Suite {}", rng.range_inclusive(100, 499))
    } else {
        String::new()
    };
    format!(
        "{number} {street}{suite}, {}, {} {:05}",
        town(rng),
        rng.pick(STATE_ABBREVIATIONS),
        rng.below(100_000)
    )
}

fn claim_number(rng: &mut SplitMix64) -> String {
    match rng.below(3) {
        0 => format!("{:02}-{:06}", rng.below(100), rng.below(1_000_000)),
        1 => format!("WC{:07}", rng.below(10_000_000)),
        _ => format!("CLM-{:05}", rng.below(100_000)),
    }
}

const HEADERS: [&str; 6] = [
    "{report_date}\n\n{contact}\n{insurer}\n{address}\n\nRE: {patient}\nClaim No.: {claim}\n\
     Date of Injury: {injury_date}\nDate of Examination: {exam_date}\n\n\
     Dear {contact_hon} {contact_last}:\n\n\
     At your request, I performed an independent medical examination of {hon} {patient_last} \
     on {exam_date} at my office in {examiner_city}.\n",
    "INDEPENDENT MEDICAL EXAMINATION REPORT\n\nExaminee: {patient}\nDate of Birth: {dob}\n\
     Claim Number: {claim}\nDate of Injury: {injury_date}\nDate of Exam: {exam_date}\n\
     Requested By: {insurer}, {address}\nExamining Physician: {examiner}\n",
    "TO: {contact}, {insurer}\nFROM: {examiner}\nDATE: {report_date}\n\
     SUBJECT: {patient} (File {claim})\nADDRESS ON FILE: {address}\n\n\
     This report summarizes my examination of {hon} {patient_last} on {exam_date}.\n",
    "{insurer}\nAttn: {contact}\n{address}\n\nReport Date: {report_date}\nPatient: {patient}\n\
     Claim: {claim}\nDOI: {injury_date}\n\n\
     {hon} {patient_last} was examined at {practice} on {exam_date}.\n",
    "ORTHOPEDIC INDEPENDENT EVALUATION\nPrepared for: {insurer}\nClaimant: {patient}\n\
     Claimant Address: {address}\nClaim #: {claim}\nInjury Date: {injury_date}\n\
     Evaluation Date: {exam_date}\n",
    "{report_date}\n\nRe: {patient}\nEmployer: {employer_name}\nCarrier: {insurer}\n\
     Carrier File: {claim}\nMailing Address: {address}\n\n\
     Dear {contact_hon} {contact_last}:\n\n\
     Thank you for referring {hon} {patient_last} for evaluation.\n",
];

const CLOSINGS: [&str; 4] = [
    "Thank you for the opportunity to evaluate this claimant. Please contact my office at \
     {office_phone} with any questions.\n\nSincerely,\n\n{examiner}\nLicense No. {license}\n\
     {practice}\n\ncc: {doctor_cred}\n",
    "I declare that the foregoing is true and correct to the best of my knowledge.\n\n\
     {examiner}\n{practice}, {examiner_city}\nPhone: {office_phone}\n",
    "If additional records become available, I would be happy to review them.\n\n\
     Respectfully,\n{examiner}\nBoard Certified Orthopedic Surgeon\nLicense: {license}\n",
    "Signed electronically on {report_date}.\n\n{examiner}\nMedical License {license}\n\n\
     cc: {contact}\ncc: {doctor_cred}\n",
];

const HEADINGS: [[&str; 4]; 3] = [
    [
        "HISTORY OF PRESENT ILLNESS:",
        "RECORDS REVIEWED:",
        "PHYSICAL EXAMINATION:",
        "DISCUSSION AND OPINION:",
    ],
    [
        "History:",
        "Medical Records:",
        "Examination:",
        "Impression:",
    ],
    [
        "BACKGROUND",
        "REVIEW OF RECORDS",
        "CLINICAL FINDINGS",
        "CONCLUSIONS",
    ],
];

const HISTORY: &[&str] = &[
    "The patient lives with {relation} {given} in {city}.",
    "{hon} {patient_last} was born in {city} and completed {n} years of school.",
    "{patient} was seen by {doctor_cred} and later by Dr. {doctor_last} of {facility}.",
    "Current medications include {medication} {dose} mg daily.",
    "The patient moved from {city} to {city} in {year}.",
    "{hon} {patient_last} is a {age}-year-old {occupation} who reports an injury to the {body} on {date} while working at {employer}.",
    "The claimant was initially seen at {facility} in {city} on {date}.",
    "{hon} {patient_last} was referred to {doctor_cred} for further evaluation.",
    "Following the incident, the patient treated with Dr. {doctor} at {facility}.",
    "The patient relocated to {state} in {year} and has not returned to work since.",
    "Physical therapy was provided at {facility} for {n} weeks with partial relief.",
    "The patient reports pain rated {pain} at rest and {pain} with activity.",
    "A prior injury to the {body} in {year} was treated conservatively.",
    "{patient} states that symptoms worsened after {short_date}.",
    "The patient denies any prior claims involving the {body}.",
    "An MRI of the {body} was obtained at {facility} on {date} and demonstrated a {diagnosis}.",
    "Surgery was performed by Dr. {doctor_last} on {date} at {facility}.",
];

const RECORDS: &[&str] = &[
    "Billing records list CPT code {cpt} and diagnosis code {icd}.",
    "The {instrument} completed on {date} was reviewed.",
    "Correspondence from {contact} of {insurer} dated {date} was reviewed.",
    "A deposition of {doctor_cred} taken {date} was reviewed.",
    "The patient was seen at {facility}, {address}, on {date}.",
    "A letter from {relation} {given} {patient_last} was included in the file.",
    "Records from {facility} dated {date} were reviewed.",
    "A note by Dr. {doctor} dated {date} indicates a {diagnosis}.",
    "Office notes from {doctor_cred} at {facility}, {city}, were reviewed.",
    "The claim file, document number {docnum}, was reviewed in its entirety.",
    "Dr. {doctor_last} can be reached at {phone} regarding these records.",
    "Therapy notes from {facility} cover {n} visits between {short_date} and {date}.",
    "Emergency department records from {facility} document evaluation on {date}.",
    "A functional capacity evaluation dated {date} was reviewed.",
    "Pharmacy records list {n} prescriptions filled since {year}.",
    "A recorded statement of {patient} taken on {date} was reviewed.",
];

const EXAM: &[&str] = &[
    "{eponym} test is {posneg} on the {side} side.",
    "{eponym} sign is {posneg} bilaterally.",
    "The {instrument} score today is {n}.",
    "{eponym} and {eponym} maneuvers are {posneg}.",
    "Diagnosis code {icd} best describes the current findings.",
    "Range of motion of the {body} is {deg} degrees of flexion.",
    "Strength testing reveals {strength} in all major muscle groups.",
    "There is tenderness to palpation over the {body}.",
    "Imaging shows mild degenerative changes at {level}.",
    "Sensation is intact to light touch in all dermatomes.",
    "Grip strength measured {n} kilograms on the right and {n} kilograms on the left.",
    "Reflexes are {reflex} and symmetric.",
    "Straight leg raise is negative at {deg} degrees bilaterally.",
    "The patient ambulates without an assistive device.",
    "Height is {height} inches and weight is {weight} pounds.",
];

const OPINION: &[&str] = &[
    "I agree with the opinion of Dr. {doctor_last} regarding causation.",
    "Apportionment of {pct} to the prior injury of {year} is appropriate.",
    "The {eponym} findings are not consistent with radiculopathy.",
    "A copy of this report is being sent to {doctor_cred}.",
    "{hon} {patient_last} should follow up with {doctor} in {city}.",
    "Within a reasonable degree of medical certainty, the diagnosis is {diagnosis} of the {body}.",
    "The patient reached maximum medical improvement as of {date}.",
    "Based on the AMA Guides, the patient has a {pct} whole person impairment.",
    "No further treatment is recommended at this time.",
    "The injury of {date} is the prevailing factor in the need for treatment.",
    "Work restrictions include no lifting over {weight_limit} pounds.",
    "{hon} {patient_last} may return to full duty as of {date}.",
    "Future care should be coordinated with Dr. {doctor_last} at {facility}.",
    "The current complaints are consistent with the mechanism of injury.",
];

const POOLS: [&[&str]; 4] = [HISTORY, RECORDS, EXAM, OPINION];

enum Piece {
    Text(String),
    Pii(PiiCategory, String),
}

struct ReportWriter<'a> {
    rng: &'a mut SplitMix64,
    examiner: &'a Examiner,
    variant: usize,
    patient: (String, String),
    hon: &'static str,
    contact: (String, String),
    contact_hon: &'static str,
    insurer: &'static str,
    claim: String,
    injury_date: String,
    exam_date: String,
    text: String,
    spans: Vec<(PiiCategory, Range<usize>)>,
}

impl<'a> ReportWriter<'a> {
    fn new(rng: &'a mut SplitMix64, examiners: &'a [Examiner], variant: usize) -> Self {
        let examiner = &examiners[variant % examiners.len()];
        let patient = (rng.pick(GIVEN_NAMES).to_string(), surname(rng).to_string());
        let hon = if rng.chance(1, 2) { "Mr." } else { "Ms." };
        let contact = (rng.pick(GIVEN_NAMES).to_string(), surname(rng).to_string());
        let contact_hon = if rng.chance(1, 2) { "Mr." } else { "Ms." };
        let insurer = *rng.pick(INSURERS);
        let claim = claim_number(rng);
        let injury_date = date(rng, false);
        let long_form = rng.chance(1, 2);
        let exam_date = date(rng, long_form);
        Self {
            rng,
            examiner,
            variant,
            patient,
            hon,
            contact,
            contact_hon,
            insurer,
            claim,
            injury_date,
            exam_date,
            text: String::new(),
            spans: Vec::new(),
        }
    }

    fn write(mut self) -> (String, Vec<(PiiCategory, Range<usize>)>) {
        let v = self.variant;
        self.fill(HEADERS[v % HEADERS.len()]);
        self.text.push('\n');

        let headings = HEADINGS[v % HEADINGS.len()];
        let paragraphs = self.rng.range_inclusive(3, 8);
        let mut kinds: Vec<usize> = vec![0, 2, 3, 1];
        kinds.truncate(paragraphs);
        while kinds.len() < paragraphs {
            kinds.push(self.rng.below(4));
        }
        kinds.sort_unstable();
        let mut last_kind = None;
        for kind in kinds {
            if last_kind != Some(kind) {
                self.text.push_str(headings[kind]);
                self.text.push('\n');
            }
            last_kind = Some(kind);
            let pool = POOLS[kind];
            let count = self.rng.range_inclusive(2, 4);
            let mut picks: Vec<usize> = (0..pool.len()).collect();
            self.rng.shuffle(&mut picks);
            for (i, &p) in picks.iter().take(count).enumerate() {
                if i > 0 {
                    self.text.push(' ');
                }
                self.fill(pool[p]);
            }
            self.text.push_str("\n\n");
        }

        self.fill(CLOSINGS[v % CLOSINGS.len()]);
        (self.text, self.spans)
    }

    fn fill(&mut self, template: &str) {
        let mut rest = template;
        while let Some(open) = rest.find('{') {
            self.text.push_str(&rest[..open]);
            let close = open + rest[open..].find('}').expect("template slots are closed");
            match self.slot(&rest[open + 1..close]) {
                Piece::Text(s) => self.text.push_str(&s),
                Piece::Pii(category, s) => {
                    let start = self.text.len();
                    self.text.push_str(&s);
                    self.spans.push((category, start..self.text.len()));
                }
            }
            rest = &rest[close + 1..];
        }
        self.text.push_str(rest);
    }

    fn slot(&mut self, name: &str) -> Piece {
        use PiiCategory::*;
        let rng = &mut *self.rng;
        let ex = self.examiner;
        let person = |rng: &mut SplitMix64| format!("{} {}", rng.pick(GIVEN_NAMES), surname(rng));
        match name {
            "patient" => Piece::Pii(Name, format!("{} {}", self.patient.0, self.patient.1)),
            "patient_last" => Piece::Pii(Name, self.patient.1.clone()),
            "hon" => Piece::Text(self.hon.to_string()),
            "contact" => Piece::Pii(Name, format!("{} {}", self.contact.0, self.contact.1)),
            "contact_last" => Piece::Pii(Name, self.contact.1.clone()),
            "contact_hon" => Piece::Text(self.contact_hon.to_string()),
            "doctor" => Piece::Pii(Name, person(rng)),
            "doctor_last" => Piece::Pii(Name, surname(rng).to_string()),
            "doctor_cred" => {
                let cred = if rng.chance(4, 5) { "M.D." } else { "D.O." };
                Piece::Pii(Name, format!("{}, {cred}", person(rng)))
            }
            "examiner" => Piece::Pii(Name, format!("{}, {}", ex.name, ex.credential)),
            "report_date" | "date" => Piece::Pii(Date, date(rng, false)),
            "dob" => Piece::Pii(Date, date(rng, false).replace("20", "19")),
            "injury_date" => Piece::Pii(Date, self.injury_date.clone()),
            "exam_date" => Piece::Pii(Date, self.exam_date.clone()),
            "short_date" => Piece::Pii(Date, short_date(rng)),
            "facility" => Piece::Pii(Place, facility(rng)),
            "city" => Piece::Pii(
                Place,
                format!("{}, {}", town(rng), rng.pick(STATE_ABBREVIATIONS)),
            ),
            "state" => Piece::Pii(Place, rng.pick(STATE_NAMES).to_string()),
            "insurer" => Piece::Pii(Place, self.insurer.to_string()),
            "practice" => Piece::Pii(Place, ex.practice.clone()),
            "examiner_city" => Piece::Pii(Place, ex.city.clone()),
            "employer_name" => Piece::Pii(Place, format!("{} Logistics", town(rng))),
            "address" => Piece::Pii(Address, address(rng)),
            "claim" => Piece::Pii(Number, self.claim.clone()),
            "license" => Piece::Pii(Number, ex.license.clone()),
            "office_phone" => Piece::Pii(Number, ex.phone.clone()),
            "phone" => Piece::Pii(Number, phone(rng)),
            "docnum" => Piece::Pii(Number, format!("DOC-{:06}", rng.below(1_000_000))),
            "given" => Piece::Pii(Name, rng.pick(GIVEN_NAMES).to_string()),
            "age" => Piece::Text(rng.range_inclusive(19, 67).to_string()),
            "n" => Piece::Text(rng.range_inclusive(2, 24).to_string()),
            "pain" => Piece::Text(format!("{}/10", rng.range_inclusive(1, 9))),
            "strength" => Piece::Text(format!("{}/5", rng.range_inclusive(3, 5))),
            "deg" => Piece::Text((rng.range_inclusive(2, 18) * 10).to_string()),
            "level" => Piece::Text(
                rng.pick(&["L3-4", "L4-5", "L5-S1", "C5-6", "C6-7"])
                    .to_string(),
            ),
            "pct" => Piece::Text(format!("{}%", rng.range_inclusive(1, 25))),
            "year" => Piece::Text(rng.range_inclusive(1995, 2020).to_string()),
            "reflex" => Piece::Text(rng.pick(&["2+", "1+", "trace"]).to_string()),
            "height" => Piece::Text(rng.range_inclusive(60, 76).to_string()),
            "weight" => Piece::Text(rng.range_inclusive(120, 260).to_string()),
            "weight_limit" => Piece::Text((rng.range_inclusive(2, 10) * 5).to_string()),
            "eponym" => Piece::Text(rng.pick(EPONYMS).to_string()),
            "instrument" => Piece::Text(rng.pick(INSTRUMENTS).to_string()),
            "medication" => Piece::Text(rng.pick(MEDICATIONS).to_string()),
            "relation" => Piece::Text(rng.pick(RELATIONS).to_string()),
            "dose" => Piece::Text((rng.range_inclusive(1, 16) * 50).to_string()),
            "cpt" => Piece::Text(rng.range_inclusive(97110, 99456).to_string()),
            "icd" => Piece::Text(format!(
                "{}.{}",
                rng.pick(&["M54", "M75", "S83", "M23", "G56", "S46"]),
                rng.range_inclusive(0, 9)
            )),
            "posneg" => Piece::Text(rng.pick(&["positive", "negative", "equivocal"]).to_string()),
            "side" => Piece::Text(rng.pick(&["right", "left"]).to_string()),
            "body" => Piece::Text(rng.pick(BODY_PARTS).to_string()),
            "diagnosis" => Piece::Text(rng.pick(DIAGNOSES).to_string()),
            "employer" => Piece::Text(rng.pick(EMPLOYERS).to_string()),
            "occupation" => Piece::Text(
                rng.pick(&["laborer", "nurse", "driver", "clerk", "mechanic", "teacher"])
                    .to_string(),
            ),
            other => panic!("unknown template slot {other:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_annotated, serialize_annotated, tokenize};

    fn corpus(doc_count: usize, seed: u64) -> Corpus {
        generate_corpus(&SynthConfig {
            doc_count,
            seed,
            structural_variants: 3,
        })
        .unwrap()
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = corpus(50, 42);
        let b = corpus(50, 42);
        let text = |c: &Corpus| c.docs().iter().map(serialize_annotated).collect::<Vec<_>>();
        assert_eq!(text(&a), text(&b));
        assert_ne!(text(&a), text(&corpus(50, 43)));
    }

    #[test]
    fn every_document_round_trips() {
        for doc in corpus(50, 42).docs() {
            let back = parse_annotated(doc.id(), &serialize_annotated(doc)).unwrap();
            assert_eq!(&back, doc);
        }
    }

    #[test]
    fn category_histogram() {
        let c = corpus(50, 42);
        for (cat, n) in c.category_counts() {
            assert!(n >= 50, "{cat}: {n}");
        }
        let small = corpus(10, 1);
        assert!(small.category_counts().values().all(|&n| n > 0));
    }

    #[test]
    fn spans_are_token_aligned_without_snapping() {
        let c = corpus(30, 7);
        for doc in c.docs() {
            let mut stats = ParseStats::default();
            parse_annotated_with(doc, &mut stats);
            assert_eq!(stats.snapped_spans, 0, "{}", doc.id());
            assert!(!doc.text().contains("<START:") && !doc.text().contains("<END>"));
            for s in &doc.spans {
                let toks = tokenize(doc.text());
                assert_eq!(toks[s.token_start].start, s.char_start);
                assert_eq!(toks[s.token_end - 1].end, s.char_end);
            }
        }
    }

    fn parse_annotated_with(doc: &AnnotatedDocument, stats: &mut ParseStats) {
        crate::corpus::parse_annotated_with_stats(doc.id(), &serialize_annotated(doc), stats)
            .unwrap();
    }

    #[test]
    fn lexicon_sizes() {
        assert!(SURNAMES.len() >= 50);
        assert!(GIVEN_NAMES.len() >= 30);
        assert!(FACILITY_PATTERNS.len() >= 20);
        assert!(STREET_PATTERNS.len() >= 20);
        assert_eq!(STATE_ABBREVIATIONS.len(), 50);
    }

    #[test]
    fn every_layout_is_distinct() {
        let layouts: std::collections::HashSet<_> = (0..DISTINCT_LAYOUTS)
            .map(|v| (v % HEADERS.len(), v % CLOSINGS.len(), v % HEADINGS.len()))
            .collect();
        assert_eq!(layouts.len(), DISTINCT_LAYOUTS);
    }

    #[test]
    fn invalid_configs() {
        let one = SynthConfig {
            doc_count: 1,
            ..SynthConfig::default()
        };
        assert!(matches!(
            generate_corpus(&one),
            Err(SynthError::TooFewDocuments(1))
        ));
        let none = SynthConfig {
            structural_variants: 0,
            ..SynthConfig::default()
        };
        assert!(matches!(
            generate_corpus(&none),
            Err(SynthError::NoVariants)
        ));
    }

    #[test]
    fn writes_files_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let config = SynthConfig {
            doc_count: 4,
            seed: 2,
            structural_variants: 2,
        };
        let c = generate_corpus(&config).unwrap();
        let manifest = write_synth_corpus(&config, &c, dir.path()).unwrap();
        assert_eq!(manifest.files.len(), 4);
        assert!(dir.path().join("ime_0001.txt").exists());
        let json: Manifest =
            serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap())
                .unwrap();
        assert_eq!(json, manifest);
        let (loaded, _) = crate::corpus::load_corpus_dir(dir.path()).unwrap();
        assert_eq!(loaded.docs(), c.docs());
    }
}
