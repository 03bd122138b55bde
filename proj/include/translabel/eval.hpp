#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "translabel/labeling.hpp"
#include "translabel/treebank.hpp"

namespace translabel {

class AlignmentError : public std::runtime_error {
 public:
  AlignmentError(std::size_t sentence, const std::string& what);
  std::size_t sentence() const { return sentence_; }

 private:
  std::size_t sentence_;
};

struct SentenceScore {
  std::size_t tokens = 0;
  std::size_t head_correct = 0;
  std::size_t labeled_correct = 0;
};

struct ScoreReport {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t head_correct = 0;
  std::size_t labeled_correct = 0;
  std::vector<SentenceScore> per_sentence;

  double uas() const;
  double las() const;

  /// Aligned, human-readable block.
  std::string to_text() const;
  /// Single line of key=value pairs.
  std::string to_record() const;
};

struct ScoreOptions {
  bool ignore_punct = false;
};

/// A token counts as punctuation when its gold UPOS is PUNCT or its gold deprel is punct.
bool is_punct(const Token& gold);

/// UAS/LAS over gold tokenization. Throws AlignmentError on count mismatches.
ScoreReport score(std::span<const DepTree> gold, std::span<const DepTree> pred, ScoreOptions options = {});

struct LabelAccuracy {
  std::size_t tokens = 0;
  std::size_t transitions_correct = 0;
  std::size_t deprels_correct = 0;
  std::size_t both_correct = 0;

  double task1() const;
  double task2() const;
  std::string to_text() const;
  std::string to_record() const;
};

LabelAccuracy label_accuracy(std::span<const LabeledSentence> gold, std::span<const LabeledSentence> pred);

/// Each word headed by its left neighbour; word 1 is the root.
std::vector<DepTree> baseline_attach_previous(std::span<const std::size_t> tokens_per_sentence);

}  // namespace translabel
