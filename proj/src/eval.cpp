#include "translabel/eval.hpp"

#include <algorithm>
#include <cstdio>

namespace translabel {

AlignmentError::AlignmentError(std::size_t sentence, const std::string& what)
    : std::runtime_error("sentence " + std::to_string(sentence) + ": " + what), sentence_(sentence) {}

namespace {

double percent(std::size_t part, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(total);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

double ScoreReport::uas() const { return percent(head_correct, tokens); }
double ScoreReport::las() const { return percent(labeled_correct, tokens); }

std::string ScoreReport::to_text() const {
  std::string out;
  out += "sentences  " + std::to_string(sentences) + "\n";
  out += "tokens     " + std::to_string(tokens) + "\n";
  out += "UAS        " + fixed2(uas()) + "  (" + std::to_string(head_correct) + "/" + std::to_string(tokens) + ")\n";
  out += "LAS        " + fixed2(las()) + "  (" + std::to_string(labeled_correct) + "/" + std::to_string(tokens) +
         ")\n";
  return out;
}

std::string ScoreReport::to_record() const {
  return "sentences=" + std::to_string(sentences) + " tokens=" + std::to_string(tokens) + " uas=" + fixed2(uas()) +
         " las=" + fixed2(las());
}

bool is_punct(const Token& gold) { return gold.upos == "PUNCT" || gold.deprel == "punct"; }

ScoreReport score(std::span<const DepTree> gold, std::span<const DepTree> pred, ScoreOptions options) {
  if (gold.size() != pred.size())
    throw AlignmentError(std::min(gold.size(), pred.size()),
                         "gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                             std::to_string(pred.size()));
  ScoreReport report;
  report.sentences = gold.size();
  report.per_sentence.reserve(gold.size());
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const DepTree& g = gold[s];
    const DepTree& p = pred[s];
    if (g.size() != p.size())
      throw AlignmentError(s, "gold has " + std::to_string(g.size()) + " tokens, prediction has " +
                                  std::to_string(p.size()));
    SentenceScore ss;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (options.ignore_punct && is_punct(g.tokens[i])) continue;
      ++ss.tokens;
      if (g.tokens[i].head == p.tokens[i].head) {
        ++ss.head_correct;
        if (g.tokens[i].deprel == p.tokens[i].deprel) ++ss.labeled_correct;
      }
    }
    report.tokens += ss.tokens;
    report.head_correct += ss.head_correct;
    report.labeled_correct += ss.labeled_correct;
    report.per_sentence.push_back(ss);
  }
  return report;
}

double LabelAccuracy::task1() const { return percent(transitions_correct, tokens); }
double LabelAccuracy::task2() const { return percent(deprels_correct, tokens); }

std::string LabelAccuracy::to_text() const {
  return "tokens     " + std::to_string(tokens) + "\ntask1      " + fixed2(task1()) + "\ntask2      " +
         fixed2(task2()) + "\nboth       " + fixed2(percent(both_correct, tokens)) + "\n";
}

std::string LabelAccuracy::to_record() const {
  return "tokens=" + std::to_string(tokens) + " task1=" + fixed2(task1()) + " task2=" + fixed2(task2()) +
         " both=" + fixed2(percent(both_correct, tokens));
}

LabelAccuracy label_accuracy(std::span<const LabeledSentence> gold, std::span<const LabeledSentence> pred) {
  if (gold.size() != pred.size())
    throw AlignmentError(std::min(gold.size(), pred.size()), "sentence counts differ");
  LabelAccuracy acc;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto& g = gold[s].labels;
    const auto& p = pred[s].labels;
    if (g.size() != p.size()) throw AlignmentError(s, "token counts differ");
    for (std::size_t i = 0; i < g.size(); ++i) {
      ++acc.tokens;
      const bool t1 = g[i].transitions == p[i].transitions;
      const bool t2 = g[i].deprel == p[i].deprel;
      acc.transitions_correct += t1;
      acc.deprels_correct += t2;
      acc.both_correct += t1 && t2;
    }
  }
  return acc;
}

std::vector<DepTree> baseline_attach_previous(std::span<const std::size_t> tokens_per_sentence) {
  std::vector<DepTree> out;
  out.reserve(tokens_per_sentence.size());
  for (std::size_t n : tokens_per_sentence) {
    std::vector<int> heads(n);
    for (std::size_t i = 0; i < n; ++i) heads[i] = static_cast<int>(i);
    out.push_back(make_tree(heads));
  }
  return out;
}

}  // namespace translabel
