#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "translabel/labeling.hpp"
#include "translabel/transition.hpp"

namespace translabel {

/// Features of one word. `lexical` holds everything derived from word forms and tags
/// in the -2..+2 window; `structural` holds the bias, sentence-boundary flags and
/// padding markers, which say nothing about the word itself.
struct FeatureVector {
  std::vector<std::string> lexical;
  std::vector<std::string> structural;
};

/// `upos` may be empty or contain "_" placeholders; either way no tag features are made.
FeatureVector extract_features(std::span<const std::string> forms, std::span<const std::string> upos,
                               std::size_t index);

struct TrainingSentence {
  std::vector<std::string> forms;
  std::vector<std::string> upos;
  LabelSequence labels;
};

/// Averaged multi-class perceptron for one task.
class LinearClassifier {
 public:
  /// Label ids follow lexicographic order, so the smallest id wins ties.
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t fallback() const { return fallback_; }

  /// Highest-scoring label id. Words with no known lexical feature get the fallback
  /// (most frequent training label).
  std::size_t predict(const FeatureVector& features) const;

  friend bool operator==(const LinearClassifier&, const LinearClassifier&) = default;

 private:
  friend class TaggerModel;
  friend class ClassifierTrainer;

  std::vector<std::string> labels_;
  std::vector<std::size_t> frequency_;
  std::size_t fallback_ = 0;
  std::unordered_map<std::string, std::unordered_map<std::uint32_t, double>> weights_;
};

/// Two independent classifiers: transition subsequence and dependency relation.
class TaggerModel {
 public:
  SystemId system() const { return system_; }
  std::uint64_t seed() const { return seed_; }
  int epochs() const { return epochs_; }
  const LinearClassifier& transitions() const { return transitions_; }
  const LinearClassifier& deprels() const { return deprels_; }

  LabelSequence predict(std::span<const std::string> forms, std::span<const std::string> upos = {}) const;

  /// Line-oriented text dump; see README for the layout.
  void save(std::ostream& out) const;
  static TaggerModel load(std::istream& in);

  friend bool operator==(const TaggerModel&, const TaggerModel&) = default;

 private:
  friend TaggerModel train(SystemId, std::span<const TrainingSentence>, int, std::uint64_t);

  SystemId system_ = SystemId::ArcStandard;
  std::uint64_t seed_ = 0;
  int epochs_ = 0;
  LinearClassifier transitions_;
  LinearClassifier deprels_;
};

/// Shuffles with `seed` every epoch, so the result is reproducible bit for bit.
/// Throws std::invalid_argument on an empty corpus, epochs < 1 or mixed systems.
TaggerModel train(SystemId system, std::span<const TrainingSentence> corpus, int epochs, std::uint64_t seed);

}  // namespace translabel
