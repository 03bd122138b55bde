#include "translabel/labeling.hpp"

#include <istream>
#include <ostream>

#include "translabel/oracle.hpp"

namespace translabel {

LabelSequence encode(SystemId system, const DepTree& tree) {
  const OracleTrace trace = oracle(system, tree);
  LabelSequence seq;
  seq.system = system;
  seq.labels.reserve(tree.size());

  Configuration c = trace.computation.initial;
  std::vector<Transition> group;
  auto flush = [&] {
    if (group.empty()) return;
    const std::size_t i = seq.labels.size();
    seq.labels.push_back({join_transitions(group), tree.tokens[i].deprel});
    group.clear();
  };
  for (Transition t : trace.computation.transitions) {
    const bool read = is_read(system, c, t);
    const bool terminating = system == SystemId::Covington && t == Transition::Shift && !read;
    advance(system, c, t);
    if (terminating) continue;
    if (read) flush();
    group.push_back(t);
  }
  flush();
  return seq;
}

DecodeStats& DecodeStats::operator+=(const DecodeStats& o) {
  unknown_mnemonics += o.unknown_mnemonics;
  illegal_skipped += o.illegal_skipped;
  extra_reads_skipped += o.extra_reads_skipped;
  forced_reads += o.forced_reads;
  roots_from_deprel += o.roots_from_deprel;
  first_token_roots += o.first_token_roots;
  extra_roots_linked += o.extra_roots_linked;
  headless_attached += o.headless_attached;
  return *this;
}

void repair_roots(std::vector<int>& heads, std::span<const std::string> deprels, DecodeStats* stats) {
  DecodeStats local;
  const std::size_t n = heads.size();
  if (n == 0) return;

  auto has_root = [&] {
    for (int h : heads)
      if (h == 0) return true;
    return false;
  };
  if (!has_root()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (heads[i] < 0 && i < deprels.size() && deprels[i] == "root") {
        heads[i] = 0;
        ++local.roots_from_deprel;
      }
    }
    if (!has_root()) {
      heads[0] = 0;
      ++local.first_token_roots;
    }
  }

  int root = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (heads[i] != 0) continue;
    if (root == 0) {
      root = static_cast<int>(i + 1);
    } else {
      heads[i] = root;
      ++local.extra_roots_linked;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (heads[i] < 0) {
      heads[i] = root;
      ++local.headless_attached;
    }
  }
  if (stats) *stats += local;
}

DepTree decode(SystemId system, std::span<const TokenLabel> labels, std::span<const std::string> forms,
               DecodeStats* stats) {
  if (labels.size() != forms.size())
    throw std::invalid_argument("decode: " + std::to_string(labels.size()) + " labels for " +
                                std::to_string(forms.size()) + " words");
  if (labels.empty()) throw std::invalid_argument("decode: empty sentence");

  DecodeStats local;
  const int n = static_cast<int>(labels.size());
  Configuration c = Configuration::initial(system, n);

  for (const TokenLabel& label : labels) {
    bool read_done = false;
    for (const auto& atom : split_transitions(label.transitions)) {
      if (!atom) {
        ++local.unknown_mnemonics;
        continue;
      }
      const bool read = is_read(system, c, *atom);
      if (read && read_done) {
        ++local.extra_reads_skipped;
        continue;
      }
      if (!preconditions(system, c, *atom)) {
        ++local.illegal_skipped;
        continue;
      }
      advance(system, c, *atom);
      read_done = read_done || read;
    }
    if (!read_done) {
      // Only i-1 reads have run at label i, so the buffer is not empty.
      advance(system, c, Transition::Shift);
      ++local.forced_reads;
    }
  }
  if (system == SystemId::Covington && !c.buffer_empty()) advance(system, c, Transition::Shift);

  std::vector<int> heads(c.heads().begin() + 1, c.heads().end());
  std::vector<std::string> deprels;
  deprels.reserve(labels.size());
  for (const auto& l : labels) deprels.push_back(l.deprel);
  repair_roots(heads, deprels, &local);

  std::vector<std::string> words(forms.begin(), forms.end());
  DepTree tree = make_tree(heads, deprels, words);
  if (stats) *stats += local;
  return tree;
}

DepTree decode(const LabelSequence& labels, std::span<const std::string> forms, DecodeStats* stats) {
  return decode(labels.system, labels.labels, forms, stats);
}

void VocabReport::add(const LabelSequence& labels) {
  ++sentences;
  for (const auto& l : labels.labels) {
    ++transition_labels[l.transitions];
    ++deprel_labels[l.deprel];
  }
}

VocabReport& VocabReport::operator+=(const VocabReport& o) {
  sentences += o.sentences;
  skipped += o.skipped;
  for (const auto& [k, v] : o.transition_labels) transition_labels[k] += v;
  for (const auto& [k, v] : o.deprel_labels) deprel_labels[k] += v;
  return *this;
}

VocabReport label_vocabulary(SystemId system, std::span<const DepTree> trees) {
  VocabReport report;
  report.system = system;
  for (const auto& tree : trees) {
    if (system != SystemId::Covington && !is_projective(tree)) {
      ++report.skipped;
      continue;
    }
    report.add(encode(system, tree));
  }
  return report;
}

LabelFileError::LabelFileError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

void write_label_file(const LabelFile& file, std::ostream& out) {
  out << "# system = " << to_string(file.system) << '\n';
  for (const auto& s : file.sentences) {
    for (std::size_t i = 0; i < s.labels.size(); ++i)
      out << s.forms[i] << '\t' << s.labels[i].transitions << '\t' << s.labels[i].deprel << '\n';
    out << '\n';
  }
}

LabelFile read_label_file(std::istream& in) {
  LabelFile file;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  LabeledSentence current;
  auto flush = [&] {
    if (current.labels.empty()) return;
    file.sentences.push_back(std::move(current));
    current = LabeledSentence{};
  };

  static constexpr std::string_view kHeader = "# system = ";
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header) {
      if (line.rfind(kHeader, 0) != 0) throw LabelFileError(line_no, "missing '# system = ...' header");
      auto system = parse_system(std::string_view(line).substr(kHeader.size()));
      if (!system) throw LabelFileError(line_no, "unknown system '" + line.substr(kHeader.size()) + "'");
      file.system = *system;
      header = true;
      continue;
    }
    if (line.empty()) {
      flush();
      continue;
    }
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
      throw LabelFileError(line_no, "expected FORM<TAB>TRANSITIONS<TAB>DEPREL");
    current.forms.push_back(line.substr(0, t1));
    current.labels.push_back({line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)});
  }
  if (!header) throw LabelFileError(line_no, "missing '# system = ...' header");
  flush();
  return file;
}

}  // namespace translabel
