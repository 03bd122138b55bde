#include "translabel/tagger.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace translabel {

namespace {

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::vector<std::string> code_points(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t len = std::min(utf8_length(static_cast<unsigned char>(s[i])), s.size() - i);
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::string ascii_lower(std::string s) {
  for (char& ch : s)
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  return s;
}

}  // namespace

FeatureVector extract_features(std::span<const std::string> forms, std::span<const std::string> upos,
                               std::size_t index) {
  FeatureVector fv;
  const auto n = static_cast<long>(forms.size());
  const auto i = static_cast<long>(index);
  fv.structural.emplace_back("bias");
  if (i == 0) fv.structural.emplace_back("first");
  if (i == n - 1) fv.structural.emplace_back("last");

  for (long off = -2; off <= 2; ++off) {
    const long j = i + off;
    const std::string at = "[" + std::to_string(off) + "]=";
    if (j < 0) {
      fv.structural.push_back("w" + at + "<s>");
      continue;
    }
    if (j >= n) {
      fv.structural.push_back("w" + at + "</s>");
      continue;
    }
    const std::string& form = forms[static_cast<std::size_t>(j)];
    fv.lexical.push_back("w" + at + form);
    fv.lexical.push_back("l" + at + ascii_lower(form));
    const auto cps = code_points(form);
    for (std::size_t len = 1; len <= 3 && len <= cps.size(); ++len) {
      std::string prefix, suffix;
      for (std::size_t k = 0; k < len; ++k) {
        prefix += cps[k];
        suffix += cps[cps.size() - len + k];
      }
      fv.lexical.push_back("p" + std::to_string(len) + at + prefix);
      fv.lexical.push_back("s" + std::to_string(len) + at + suffix);
    }
    if (static_cast<std::size_t>(j) < upos.size()) {
      const std::string& tag = upos[static_cast<std::size_t>(j)];
      if (!tag.empty() && tag != "_") fv.lexical.push_back("u" + at + tag);
    }
  }
  return fv;
}

std::size_t LinearClassifier::predict(const FeatureVector& features) const {
  std::vector<double> scores(labels_.size(), 0.0);
  bool evidence = false;
  auto accumulate = [&](const std::string& key) {
    auto it = weights_.find(key);
    if (it == weights_.end()) return false;
    for (const auto& [label, w] : it->second) scores[label] += w;
    return true;
  };
  for (const auto& f : features.lexical) evidence = accumulate(f) || evidence;
  if (!evidence) return fallback_;
  for (const auto& f : features.structural) accumulate(f);

  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k)
    if (scores[k] > scores[best]) best = k;
  return best;
}

/// Averaged perceptron bookkeeping: each weight remembers when it last changed so
/// that the running sum can be brought up to date lazily.
class ClassifierTrainer {
 public:
  explicit ClassifierTrainer(const std::map<std::string, std::size_t>& counts) {
    for (const auto& [label, freq] : counts) {
      model_.labels_.push_back(label);
      model_.frequency_.push_back(freq);
      ids_.emplace(label, model_.labels_.size() - 1);
    }
    model_.fallback_ = 0;
    for (std::size_t k = 1; k < model_.frequency_.size(); ++k)
      if (model_.frequency_[k] > model_.frequency_[model_.fallback_]) model_.fallback_ = k;
  }

  std::size_t id(const std::string& label) const { return ids_.at(label); }

  std::size_t predict(const FeatureVector& fv) const {
    std::vector<double> scores(model_.labels_.size(), 0.0);
    auto add = [&](const std::string& key) {
      auto it = params_.find(key);
      if (it == params_.end()) return;
      for (const auto& [label, p] : it->second) scores[label] += p.weight;
    };
    for (const auto& f : fv.lexical) add(f);
    for (const auto& f : fv.structural) add(f);
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k)
      if (scores[k] > scores[best]) best = k;
    return best;
  }

  void update(const FeatureVector& fv, std::size_t gold, std::size_t guess) {
    ++clock_;
    if (gold == guess) return;
    auto bump = [&](const std::string& key) {
      auto& row = params_[key];
      touch(row[static_cast<std::uint32_t>(gold)], 1.0);
      touch(row[static_cast<std::uint32_t>(guess)], -1.0);
    };
    for (const auto& f : fv.lexical) bump(f);
    for (const auto& f : fv.structural) bump(f);
  }

  LinearClassifier finish() {
    const double steps = static_cast<double>(std::max<std::uint64_t>(clock_, 1));
    for (auto& [key, row] : params_) {
      for (auto& [label, p] : row) {
        p.total += static_cast<double>(clock_ - p.stamp) * p.weight;
        const double avg = p.total / steps;
        if (avg != 0.0) model_.weights_[key][label] = avg;
      }
    }
    return model_;
  }

 private:
  struct Param {
    double weight = 0.0;
    double total = 0.0;
    std::uint64_t stamp = 0;
  };

  void touch(Param& p, double delta) {
    p.total += static_cast<double>(clock_ - p.stamp) * p.weight;
    p.stamp = clock_;
    p.weight += delta;
  }

  LinearClassifier model_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::unordered_map<std::string, std::unordered_map<std::uint32_t, Param>> params_;
  std::uint64_t clock_ = 0;
};

TaggerModel train(SystemId system, std::span<const TrainingSentence> corpus, int epochs, std::uint64_t seed) {
  if (epochs < 1) throw std::invalid_argument("train: epochs must be at least 1");
  if (corpus.empty()) throw std::invalid_argument("train: empty corpus");

  std::map<std::string, std::size_t> trans_counts, rel_counts;
  std::vector<std::vector<FeatureVector>> features;
  features.reserve(corpus.size());
  for (const auto& s : corpus) {
    if (s.labels.system != system) throw std::invalid_argument("train: corpus mixes transition systems");
    if (s.labels.size() != s.forms.size()) throw std::invalid_argument("train: label/word count mismatch");
    std::vector<FeatureVector> fvs;
    for (std::size_t i = 0; i < s.forms.size(); ++i) {
      fvs.push_back(extract_features(s.forms, s.upos, i));
      ++trans_counts[s.labels.labels[i].transitions];
      ++rel_counts[s.labels.labels[i].deprel];
    }
    features.push_back(std::move(fvs));
  }

  ClassifierTrainer trans(trans_counts), rels(rel_counts);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t s : order) {
      const auto& labels = corpus[s].labels.labels;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        const FeatureVector& fv = features[s][i];
        trans.update(fv, trans.id(labels[i].transitions), trans.predict(fv));
        rels.update(fv, rels.id(labels[i].deprel), rels.predict(fv));
      }
    }
  }

  TaggerModel model;
  model.system_ = system;
  model.seed_ = seed;
  model.epochs_ = epochs;
  model.transitions_ = trans.finish();
  model.deprels_ = rels.finish();
  return model;
}

LabelSequence TaggerModel::predict(std::span<const std::string> forms, std::span<const std::string> upos) const {
  LabelSequence seq;
  seq.system = system_;
  seq.labels.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const FeatureVector fv = extract_features(forms, upos, i);
    seq.labels.push_back({transitions_.labels()[transitions_.predict(fv)], deprels_.labels()[deprels_.predict(fv)]});
  }
  return seq;
}

namespace {

constexpr std::string_view kMagic = "translabel-tagger 1";

void save_classifier(std::ostream& out, std::string_view name, const LinearClassifier& c,
                     const std::unordered_map<std::string, std::unordered_map<std::uint32_t, double>>& weights,
                     const std::vector<std::size_t>& frequency) {
  out << "task " << name << ' ' << c.labels().size() << ' ' << c.fallback() << '\n';
  for (std::size_t k = 0; k < c.labels().size(); ++k) out << c.labels()[k] << '\t' << frequency[k] << '\n';

  std::vector<const std::string*> keys;
  std::size_t records = 0;
  for (const auto& [key, row] : weights) {
    keys.push_back(&key);
    records += row.size();
  }
  std::sort(keys.begin(), keys.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
  out << "weights " << records << '\n';
  for (const std::string* key : keys) {
    const auto& row = weights.at(*key);
    std::vector<std::pair<std::uint32_t, double>> sorted(row.begin(), row.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [label, w] : sorted) out << *key << '\t' << label << '\t' << w << '\n';
  }
}

[[noreturn]] void bad_model(const std::string& what) { throw std::runtime_error("model file: " + what); }

std::string expect_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) bad_model("unexpected end of file");
  return line;
}

}  // namespace

void TaggerModel::save(std::ostream& out) const {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << kMagic << '\n';
  out << "system " << to_string(system_) << '\n';
  out << "seed " << seed_ << '\n';
  out << "epochs " << epochs_ << '\n';
  save_classifier(out, "transitions", transitions_, transitions_.weights_, transitions_.frequency_);
  save_classifier(out, "deprels", deprels_, deprels_.weights_, deprels_.frequency_);
  out << "end\n";
  out.flags(flags);
  out.precision(precision);
}

TaggerModel TaggerModel::load(std::istream& in) {
  TaggerModel model;
  if (expect_line(in) != kMagic) bad_model("bad magic line");

  auto field = [&](std::string_view key) {
    const std::string line = expect_line(in);
    if (line.rfind(std::string(key) + ' ', 0) != 0) bad_model("expected '" + std::string(key) + "'");
    return line.substr(key.size() + 1);
  };
  auto system = parse_system(field("system"));
  if (!system) bad_model("unknown system");
  model.system_ = *system;
  model.seed_ = std::stoull(field("seed"));
  model.epochs_ = std::stoi(field("epochs"));

  auto load_classifier = [&](std::string_view name, LinearClassifier& c) {
    std::istringstream head(field("task"));
    std::string got;
    std::size_t count = 0;
    head >> got >> count >> c.fallback_;
    if (got != name || !head) bad_model("bad task header for " + std::string(name));
    for (std::size_t k = 0; k < count; ++k) {
      const std::string line = expect_line(in);
      const auto tab = line.rfind('\t');
      if (tab == std::string::npos) bad_model("bad label line");
      c.labels_.push_back(line.substr(0, tab));
      c.frequency_.push_back(std::stoull(line.substr(tab + 1)));
    }
    if (c.fallback_ >= c.labels_.size()) bad_model("fallback out of range");
    const std::size_t records = std::stoull(field("weights"));
    for (std::size_t r = 0; r < records; ++r) {
      const std::string line = expect_line(in);
      const auto t2 = line.rfind('\t');
      const auto t1 = t2 == std::string::npos || t2 == 0 ? std::string::npos : line.rfind('\t', t2 - 1);
      if (t1 == std::string::npos) bad_model("bad weight line");
      const auto label = static_cast<std::uint32_t>(std::stoul(line.substr(t1 + 1, t2 - t1 - 1)));
      if (label >= c.labels_.size()) bad_model("label id out of range");
      c.weights_[line.substr(0, t1)][label] = std::stod(line.substr(t2 + 1));
    }
  };
  load_classifier("transitions", model.transitions_);
  load_classifier("deprels", model.deprels_);
  if (expect_line(in) != "end") bad_model("missing end marker");
  return model;
}

}  // namespace translabel
