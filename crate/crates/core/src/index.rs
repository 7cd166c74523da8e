use crate::encoding::{ThresholdLces, Variant};
use crate::error::{Error, Result};
use crate::lce::{LceBackend, LceBackendKind};
use crate::rlbwt::Rlbwt;
use crate::suffix::SuffixBundle;
use crate::text::Text;
use crate::thresholds::{LceSide, RawThresholds, ThresholdStorage, ThresholdTable, TieBreak};

/// A queryable index: run-length BWT with run-boundary SA samples,
/// thresholds, optional threshold LCEs and an LCE backend.
#[derive(Clone, Debug)]
pub struct MsIndex {
    pub(crate) alphabet: Vec<u8>,
    pub(crate) sentinel: u8,
    pub(crate) variant: Variant,
    pub(crate) rlbwt: Rlbwt,
    pub(crate) thresholds: ThresholdTable,
    pub(crate) lces: Option<ThresholdLces>,
    pub(crate) lce: LceBackend,
    // symbols that may take part in a match
    pub(crate) matchable: [bool; 256],
}

impl MsIndex {
    pub(crate) fn assemble(
        alphabet: Vec<u8>,
        sentinel: u8,
        variant: Variant,
        rlbwt: Rlbwt,
        thresholds: ThresholdTable,
        lces: Option<ThresholdLces>,
        lce: LceBackend,
    ) -> Self {
        let mut matchable = [false; 256];
        for &c in &alphabet {
            matchable[c as usize] = true;
        }
        MsIndex {
            alphabet,
            sentinel,
            variant,
            rlbwt,
            thresholds,
            lces,
            lce,
            matchable,
        }
    }

    /// Text length `n`, sentinel included.
    pub fn len(&self) -> usize {
        self.rlbwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rlbwt.is_empty()
    }

    /// Number of BWT runs `r`.
    pub fn runs(&self) -> usize {
        self.rlbwt.runs()
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn sentinel(&self) -> u8 {
        self.sentinel
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn lce_backend_kind(&self) -> LceBackendKind {
        self.lce.kind()
    }

    pub fn threshold_storage(&self) -> ThresholdStorage {
        self.thresholds.storage()
    }

    pub fn rlbwt(&self) -> &Rlbwt {
        &self.rlbwt
    }

    pub fn thresholds(&self) -> &ThresholdTable {
        &self.thresholds
    }

    pub fn threshold_lces(&self) -> Option<&ThresholdLces> {
        self.lces.as_ref()
    }

    pub fn lce_backend(&self) -> &LceBackend {
        &self.lce
    }

    /// Whether `c` can be part of a match (the sentinel never is).
    #[inline]
    pub fn matches_symbol(&self, c: u8) -> bool {
        self.matchable[c as usize]
    }

    /// Threshold of run `x`.
    pub fn threshold(&self, x: usize) -> Result<usize> {
        self.check_run(x)?;
        self.thresholds
            .get(&self.rlbwt, x)
            .ok_or(Error::UndefinedThreshold(x))
    }

    /// Stored threshold LCE of run `x`; `Ok(None)` when the variant keeps none
    /// or cannot represent the value.
    pub fn threshold_lce(&self, x: usize, side: LceSide) -> Result<Option<usize>> {
        self.threshold(x)?;
        Ok(self.lces.as_ref().and_then(|l| l.lookup(x, side)))
    }

    fn check_run(&self, x: usize) -> Result<()> {
        if x >= self.runs() {
            return Err(Error::OutOfRange {
                pos: x,
                len: self.runs(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IndexBuilder {
    variant: Variant,
    backend: LceBackendKind,
    storage: ThresholdStorage,
    tie: TieBreak,
}

impl Default for IndexBuilder {
    fn default() -> Self {
        IndexBuilder {
            variant: Variant::Augmented(crate::encoding::LceEncoding::Full),
            backend: LceBackendKind::default(),
            storage: ThresholdStorage::default(),
            tie: TieBreak::default(),
        }
    }
}

impl IndexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn lce_backend(mut self, backend: LceBackendKind) -> Self {
        self.backend = backend;
        self
    }

    pub fn threshold_storage(mut self, storage: ThresholdStorage) -> Self {
        self.storage = storage;
        self
    }

    pub fn tie_break(mut self, tie: TieBreak) -> Self {
        self.tie = tie;
        self
    }

    pub fn build(&self, text: &Text) -> MsIndex {
        let bundle = SuffixBundle::build(text);
        let rlbwt = Rlbwt::from_bundle(&bundle);
        let raw = RawThresholds::build(&bundle, &rlbwt, self.tie).expect("same text");
        let lce = match self.backend {
            LceBackendKind::Naive => LceBackend::naive(text),
            LceBackendKind::LcpRmq => LceBackend::from_bundle_owned(bundle),
        };
        finish(text, rlbwt, &raw, self.variant, self.storage, lce)
    }
}

fn finish(
    text: &Text,
    rlbwt: Rlbwt,
    raw: &RawThresholds,
    variant: Variant,
    storage: ThresholdStorage,
    lce: LceBackend,
) -> MsIndex {
    let thresholds = ThresholdTable::new(raw, &rlbwt, storage);
    let lces = variant
        .encoding()
        .map(|enc| ThresholdLces::encode(raw, enc, text.len()));
    MsIndex::assemble(
        text.alphabet().to_vec(),
        text.sentinel(),
        variant,
        rlbwt,
        thresholds,
        lces,
        lce,
    )
}

/// Shared construction state for building many variants of one text.
#[derive(Clone, Debug)]
pub struct BuildContext {
    text: Text,
    bundle: SuffixBundle,
    rlbwt: Rlbwt,
    raw: RawThresholds,
}

impl BuildContext {
    pub fn new(text: Text, tie: TieBreak) -> Self {
        let bundle = SuffixBundle::build(&text);
        let rlbwt = Rlbwt::from_bundle(&bundle);
        let raw = RawThresholds::build(&bundle, &rlbwt, tie).expect("same text");
        BuildContext {
            text,
            bundle,
            rlbwt,
            raw,
        }
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn bundle(&self) -> &SuffixBundle {
        &self.bundle
    }

    pub fn rlbwt(&self) -> &Rlbwt {
        &self.rlbwt
    }

    pub fn raw_thresholds(&self) -> &RawThresholds {
        &self.raw
    }

    pub fn index(&self, variant: Variant, backend: LceBackendKind, storage: ThresholdStorage) -> MsIndex {
        let lce = match backend {
            LceBackendKind::Naive => LceBackend::naive(&self.text),
            LceBackendKind::LcpRmq => LceBackend::lcp_rmq(&self.bundle),
        };
        finish(&self.text, self.rlbwt.clone(), &self.raw, variant, storage, lce)
    }
}
