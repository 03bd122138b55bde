#include "translabel/treebank.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace translabel {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<std::string> DepTree::forms() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.form);
  return out;
}

std::size_t DepTree::root_count() const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.head == 0; }));
}

DepTree make_tree(const std::vector<int>& heads, const std::vector<std::string>& deprels,
                  const std::vector<std::string>& forms) {
  DepTree tree;
  tree.tokens.reserve(heads.size());
  for (std::size_t i = 0; i < heads.size(); ++i) {
    Token t;
    t.id = static_cast<int>(i + 1);
    t.form = i < forms.size() ? forms[i] : "w" + std::to_string(i + 1);
    t.head = heads[i];
    if (i < deprels.size())
      t.deprel = deprels[i];
    else
      t.deprel = heads[i] == 0 ? "root" : "dep";
    tree.tokens.push_back(std::move(t));
  }
  return tree;
}

void validate(const DepTree& tree) {
  const int n = static_cast<int>(tree.size());
  for (int i = 1; i <= n; ++i) {
    const Token& t = tree.tokens[static_cast<std::size_t>(i - 1)];
    if (t.id != i)
      throw ValidationError("token " + std::to_string(i) + " has id " + std::to_string(t.id));
    if (t.head < 0 || t.head > n)
      throw ValidationError("token " + std::to_string(i) + " has head " + std::to_string(t.head) +
                            " outside [0, " + std::to_string(n) + "]");
    if (t.head == i) throw ValidationError("token " + std::to_string(i) + " is its own head");
  }
  // 0 = unvisited, 1 = on current path, 2 = reaches the root
  std::vector<char> state(static_cast<std::size_t>(n) + 1, 0);
  state[0] = 2;
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int v = start;
    while (state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      v = tree.head(v);
    }
    if (state[static_cast<std::size_t>(v)] == 1) {
      auto first = std::find(path.begin(), path.end(), v);
      std::string cycle;
      for (auto it = first; it != path.end(); ++it) cycle += std::to_string(*it) + " -> ";
      cycle += std::to_string(v);
      throw ValidationError("cycle in heads: " + cycle);
    }
    for (int p : path) state[static_cast<std::size_t>(p)] = 2;
  }
}

bool is_projective(const DepTree& tree) {
  struct Span {
    int lo, hi;
  };
  std::vector<Span> arcs;
  arcs.reserve(tree.size());
  for (const auto& t : tree.tokens) arcs.push_back({std::min(t.head, t.id), std::max(t.head, t.id)});
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (std::size_t b = a + 1; b < arcs.size(); ++b) {
      const Span& x = arcs[a];
      const Span& y = arcs[b];
      if ((x.lo < y.lo && y.lo < x.hi && x.hi < y.hi) || (y.lo < x.lo && x.lo < y.hi && y.hi < x.hi))
        return false;
    }
  }
  return true;
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

bool parse_int(std::string_view s, int& value) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<DepTree> read_conllu(std::istream& in) {
  std::vector<DepTree> trees;
  DepTree current;
  bool open = false;
  std::size_t line_no = 0;
  std::size_t block_start = 0;

  auto finish = [&] {
    if (!open) return;
    if (current.tokens.empty())
      throw ParseError(block_start, "sentence block without syntactic words");
    try {
      validate(current);
    } catch (const ValidationError& e) {
      throw ValidationError("sentence starting at line " + std::to_string(block_start) + ": " + e.what());
    }
    trees.push_back(std::move(current));
    current = DepTree{};
    open = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish();
      continue;
    }
    if (!open) {
      open = true;
      block_start = line_no;
    }
    if (line.front() == '#') {
      current.comments.push_back(line);
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 10)
      throw ParseError(line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
      current.raw_lines.push_back({current.tokens.size(), line});
      continue;
    }
    Token t;
    if (!parse_int(id, t.id)) throw ParseError(line_no, "bad ID '" + std::string(id) + "'");
    if (t.id != static_cast<int>(current.tokens.size()) + 1)
      throw ParseError(line_no, "ID " + std::string(id) + " out of sequence");
    if (!parse_int(cols[6], t.head)) throw ParseError(line_no, "bad HEAD '" + std::string(cols[6]) + "'");
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    t.xpos = cols[4];
    t.feats = cols[5];
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    current.tokens.push_back(std::move(t));
  }
  finish();
  return trees;
}

std::vector<DepTree> read_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_conllu(in);
}

void write_conllu(const DepTree& tree, std::ostream& out) {
  for (const auto& c : tree.comments) out << c << '\n';
  auto raw = tree.raw_lines.begin();
  for (std::size_t i = 0; i <= tree.tokens.size(); ++i) {
    for (; raw != tree.raw_lines.end() && raw->position == i; ++raw) out << raw->text << '\n';
    if (i == tree.tokens.size()) break;
    const Token& t = tree.tokens[i];
    out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t' << t.xpos << '\t' << t.feats
        << '\t' << t.head << '\t' << t.deprel << '\t' << t.deps << '\t' << t.misc << '\n';
  }
  out << '\n';
}

void write_conllu(const std::vector<DepTree>& trees, std::ostream& out) {
  for (const auto& tree : trees) write_conllu(tree, out);
}

}  // namespace translabel
