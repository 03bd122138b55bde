#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace translabel {

/// Malformed CoNLL-U input (wrong column count, unparsable ID/HEAD).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid tree: head out of range, self-loop, or cycle.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One syntactic word. `head` is 0 for the artificial root and -1 while unassigned
/// (only transient values inside the decoder ever carry -1).
struct Token {
  int id = 0;
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  int head = -1;
  std::string deprel = "_";
  std::string deps = "_";
  std::string misc = "_";
};

/// A line that is not a syntactic word (multiword range "1-2" or empty node "1.1"),
/// kept verbatim so that writing reproduces it. `position` counts the words that
/// precede it.
struct RawLine {
  std::size_t position = 0;
  std::string text;
};

/// Dependency tree over w1..wn; node 0 is the implicit artificial root.
struct DepTree {
  std::vector<Token> tokens;
  std::vector<std::string> comments;
  std::vector<RawLine> raw_lines;

  std::size_t size() const { return tokens.size(); }
  int head(int id) const { return tokens[static_cast<std::size_t>(id - 1)].head; }
  const std::string& deprel(int id) const { return tokens[static_cast<std::size_t>(id - 1)].deprel; }
  std::vector<std::string> forms() const;
  std::size_t root_count() const;
  bool has_multiple_roots() const { return root_count() > 1; }
};

/// Builds a bare tree from a head vector (heads[i] is the head of word i+1).
DepTree make_tree(const std::vector<int>& heads, const std::vector<std::string>& deprels = {},
                  const std::vector<std::string>& forms = {});

/// Throws ValidationError unless ids are 1..n, every head is in [0, n], there are
/// no self-loops and the head graph reaches node 0 from every word.
void validate(const DepTree& tree);

bool is_projective(const DepTree& tree);

/// Reads every sentence block. Multiword ranges and empty nodes are skipped for the
/// tree but kept as raw lines. Each tree is validated before it is returned.
std::vector<DepTree> read_conllu(std::istream& in);
std::vector<DepTree> read_conllu_file(const std::string& path);

void write_conllu(const std::vector<DepTree>& trees, std::ostream& out);
void write_conllu(const DepTree& tree, std::ostream& out);

}  // namespace translabel
