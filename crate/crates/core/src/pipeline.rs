//! Glue between the stages: tagging a corpus, collecting per-participant
//! belief observations, and building classifier instances.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::belief::{self, BeliefTagger, ParticipantTags, RuleBeliefTagger};
use crate::corpus::{Corpus, Ripp, Split, Thread};
use crate::features::{self, FeatureConfig, Instance};
use crate::lexicon::Lexicons;
use crate::stats::ParticipantObservation;
use crate::textproc::TextProcessor;

/// Text processor and belief tagger sharing one set of lexicons.
pub struct Toolkit {
    pub processor: TextProcessor,
    pub tagger: Box<dyn BeliefTagger>,
}

impl Default for Toolkit {
    fn default() -> Self {
        Self::new(Arc::new(Lexicons::bundled()))
    }
}

impl Toolkit {
    pub fn new(lex: Arc<Lexicons>) -> Self {
        Self {
            processor: TextProcessor::new(lex.clone()),
            tagger: Box::new(RuleBeliefTagger::new(lex)),
        }
    }

    pub fn lexicons(&self) -> &Lexicons {
        self.processor.lexicons()
    }

    /// Tags of what `participant` sent in `thread`.
    pub fn participant_tags(&self, thread: &Thread, participant: &str) -> ParticipantTags {
        let sent: Vec<_> = thread.messages_from(participant).collect();
        belief::tag_messages(&self.processor, self.tagger.as_ref(), &sent)
    }

    /// Two observations per RIPP, one for each member, in RIPP order.
    pub fn belief_observations(&self, corpus: &Corpus, ripps: &[Ripp]) -> Vec<ParticipantObservation> {
        let threads: HashMap<&str, &Thread> = corpus.threads.iter().map(|t| (t.id.as_str(), t)).collect();
        ripps
            .par_iter()
            .flat_map_iter(|r| {
                let thread = threads.get(r.thread_id.as_str());
                [(&r.p1, r.gold.p1_role()), (&r.p2, r.gold.p1_role().flip())]
                    .into_iter()
                    .map(move |(p, role)| ParticipantObservation {
                        role,
                        counts: thread.and_then(|t| self.participant_tags(t, p).counts),
                    })
            })
            .collect()
    }

    pub fn instances(&self, corpus: &Corpus, ripps: &[Ripp], config: &FeatureConfig) -> Vec<Instance> {
        features::build_instances(&self.processor, self.tagger.as_ref(), &corpus.threads, ripps, config)
    }
}

pub fn in_split(instances: &[Instance], split: Split) -> Vec<Instance> {
    instances.iter().filter(|i| i.split == split).cloned().collect()
}
