//! Every chapter of the guide under `book/src` is attached to a module here,
//! so `cargo test --doc` compiles and runs its code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/resolutions.md")]
pub mod resolutions {}
#[doc = include_str!("../../../book/src/endomorphisms.md")]
pub mod endomorphisms {}
#[doc = include_str!("../../../book/src/levels.md")]
pub mod levels {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[cfg(test)]
mod tests {
    /// A chapter listed in the book but missing above would go untested.
    #[test]
    fn every_chapter_is_included() {
        let summary = include_str!("../../../book/src/SUMMARY.md");
        let lib = include_str!("lib.rs");
        for line in summary.lines() {
            if let Some((_, rest)) = line.split_once("](") {
                let file = rest.trim_end_matches(')');
                assert!(lib.contains(&format!("book/src/{file}\")")), "{file} is not doc-tested");
            }
        }
    }
}
