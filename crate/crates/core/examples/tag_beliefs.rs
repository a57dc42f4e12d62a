//! Tags propositional heads in a few sentences (or in the text given on the
//! command line) and prints the standoff table plus hedge counts.
//!
//!     cargo run --example tag_beliefs -- "I guess Sara may send it."

use commitment_power::belief::{count_hedges, standoff_tsv, tag_message};
use commitment_power::corpus::Message;
use commitment_power::pipeline::Toolkit;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let body = if args.is_empty() {
        "John will submit the report. I guess John is capable. \
         Sara says John may be late. If I need the report, I will let you know. \
         Please send the numbers by Friday."
            .to_string()
    } else {
        args.join(" ")
    };
    let tk = Toolkit::default();
    let message = Message {
        id: "example".into(),
        sender: "me".into(),
        to: vec!["you".into()],
        cc: vec![],
        timestamp: 0,
        subject: String::new(),
        body,
        in_reply_to: None,
    };
    let tags = tag_message(&tk.processor, tk.tagger.as_ref(), &message);
    print!("{}", standoff_tsv([&tags]));

    println!();
    let hedges = commitment_power::belief::HedgeLexicon::from_lexicons(tk.lexicons());
    for (i, s) in tags.sentences.iter().enumerate() {
        let (propositional, relational) = count_hedges(s, &hedges);
        println!("sentence {i}: {propositional} propositional, {relational} relational hedge(s)");
    }
}
