#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "translabel/transition.hpp"
#include "translabel/treebank.hpp"

namespace translabel {

/// The label of one word: the transitions executed from its read transition up to
/// the next read ('-'-joined mnemonics), and the relation to its head.
///
/// `transitions` is kept as the serialized string because it is the vocabulary atom
/// the tagger predicts and the label file stores; predicted labels may be corrupt.
struct TokenLabel {
  std::string transitions;
  std::string deprel;

  friend bool operator==(const TokenLabel&, const TokenLabel&) = default;
};

struct LabelSequence {
  SystemId system = SystemId::ArcStandard;
  std::vector<TokenLabel> labels;

  std::size_t size() const { return labels.size(); }
};

/// Oracle computation split at its read transitions. Covington's terminating shift is
/// dropped. Throws NonProjectiveInput for projective systems on non-projective trees.
LabelSequence encode(SystemId system, const DepTree& tree);

/// Counters for every repair the decoder performed.
struct DecodeStats {
  std::size_t unknown_mnemonics = 0;
  std::size_t illegal_skipped = 0;
  std::size_t extra_reads_skipped = 0;
  std::size_t forced_reads = 0;
  std::size_t roots_from_deprel = 0;   // headless "root" words attached to 0 when no root existed
  std::size_t first_token_roots = 0;   // still no root: word 1 promoted
  std::size_t extra_roots_linked = 0;  // additional roots attached under the first one
  std::size_t headless_attached = 0;   // remaining headless words attached to the root

  std::size_t repaired_actions() const {
    return unknown_mnemonics + illegal_skipped + extra_reads_skipped + forced_reads;
  }
  DecodeStats& operator+=(const DecodeStats& o);
};

/// Turns a head vector with unassigned entries (-1) into a single-rooted tree.
/// `heads[i]` / `deprels[i]` describe word i+1; heads must already be acyclic.
void repair_roots(std::vector<int>& heads, std::span<const std::string> deprels, DecodeStats* stats = nullptr);

/// Replays the labels left to right. Illegal or unknown actions are skipped, a label
/// executes at most one read (SH is forced if it executed none), Covington's
/// terminating shift is appended, and roots are repaired. Always returns a valid
/// single-rooted tree over forms.size() words.
DepTree decode(SystemId system, std::span<const TokenLabel> labels, std::span<const std::string> forms,
               DecodeStats* stats = nullptr);
DepTree decode(const LabelSequence& labels, std::span<const std::string> forms, DecodeStats* stats = nullptr);

struct VocabReport {
  SystemId system = SystemId::ArcStandard;
  std::size_t sentences = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> transition_labels;
  std::map<std::string, std::size_t> deprel_labels;

  std::size_t task1_size() const { return transition_labels.size(); }
  std::size_t task2_size() const { return deprel_labels.size(); }
  void add(const LabelSequence& labels);
  VocabReport& operator+=(const VocabReport& o);
};

/// Non-projective trees are skipped (and counted) for the projective systems.
VocabReport label_vocabulary(SystemId system, std::span<const DepTree> trees);

/// One sentence of a label file.
struct LabeledSentence {
  std::vector<std::string> forms;
  std::vector<TokenLabel> labels;
};

struct LabelFile {
  SystemId system = SystemId::ArcStandard;
  std::vector<LabeledSentence> sentences;
};

class LabelFileError : public std::runtime_error {
 public:
  LabelFileError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// "# system = <name>" header, then FORM\tTRANSITIONS\tDEPREL per word, blank line
/// after every sentence.
void write_label_file(const LabelFile& file, std::ostream& out);
LabelFile read_label_file(std::istream& in);

}  // namespace translabel
