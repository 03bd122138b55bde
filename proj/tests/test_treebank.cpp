#include <sstream>

#include "doctest.h"
#include "translabel/treebank.hpp"
#include "trees.hpp"

using namespace translabel;

namespace {

const char* kTwoWords =
    "# text = Kyrie ate\n"
    "1\tKyrie\tKyrie\tPROPN\tNNP\t_\t2\tnsubj\t_\t_\n"
    "2\tate\teat\tVERB\tVBD\t_\t0\troot\t_\t_\n"
    "\n";

std::vector<DepTree> parse(const std::string& text) {
  std::istringstream in(text);
  return read_conllu(in);
}

}  // namespace

TEST_CASE("minimal block reads as a two-word tree") {
  auto trees = parse(kTwoWords);
  REQUIRE(trees.size() == 1);
  const DepTree& t = trees[0];
  CHECK(t.size() == 2);
  CHECK(t.head(1) == 2);
  CHECK(t.head(2) == 0);
  CHECK(t.deprel(1) == "nsubj");
  CHECK(t.tokens[0].upos == "PROPN");
  CHECK(t.comments == std::vector<std::string>{"# text = Kyrie ate"});
}

TEST_CASE("ten-word example reads with its arcs") {
  std::ostringstream out;
  write_conllu(testing::kyrie_tree(), out);
  auto trees = parse(out.str());
  REQUIRE(trees.size() == 1);
  const std::vector<int> expected{2, 0, 5, 5, 2, 8, 8, 2, 10, 8};
  for (int i = 1; i <= 10; ++i) CHECK(trees[0].head(i) == expected[static_cast<std::size_t>(i - 1)]);
  CHECK(trees[0].tokens[7].form == "restaurant");
}

TEST_CASE("CRLF line endings and missing final blank line are accepted") {
  std::string text = "1\ta\t_\t_\t_\t_\t0\troot\t_\t_\r\n2\tb\t_\t_\t_\t_\t1\tdep\t_\t_\r\n";
  auto trees = parse(text);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].deprel(2) == "dep");
}

TEST_CASE("multiword ranges and empty nodes are skipped but written back") {
  const std::string text =
      "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tdo\t_\tAUX\t_\t_\t3\taux\t_\t_\n"
      "2\tn't\t_\tPART\t_\t_\t3\tadvmod\t_\t_\n"
      "3\tgo\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
      "3.1\tgo\t_\tVERB\t_\t_\t_\t_\t3:conj\t_\n"
      "\n";
  auto trees = parse(text);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].size() == 3);
  std::ostringstream out;
  write_conllu(trees, out);
  CHECK(out.str() == text);
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("wrong column count") {
    try {
      parse("1\ta\t_\t_\t_\t_\t0\troot\t_\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("non-numeric head") {
    try {
      parse("1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n2\tb\t_\t_\t_\t_\tx\tdep\t_\t_\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
}

TEST_CASE("validation rejects out-of-range heads, self loops and cycles") {
  CHECK_THROWS_AS(parse("1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n"
                        "2\tb\t_\t_\t_\t_\t5\tdep\t_\t_\n"
                        "3\tc\t_\t_\t_\t_\t1\tdep\t_\t_\n\n"),
                  ValidationError);
  CHECK_THROWS_AS(validate(make_tree({0, 2})), ValidationError);
  try {
    validate(make_tree({0, 3, 4, 2}));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
  CHECK_NOTHROW(validate(make_tree({0, 1, 1})));
}

TEST_CASE("multiple root dependents are accepted and flagged") {
  auto tree = make_tree({0, 0, 2});
  CHECK_NOTHROW(validate(tree));
  CHECK(tree.has_multiple_roots());
  CHECK_FALSE(testing::kyrie_tree().has_multiple_roots());
}

TEST_CASE("write then read is a fixed point") {
  auto trees = parse(kTwoWords);
  trees.push_back(testing::kyrie_tree());
  std::ostringstream first;
  write_conllu(trees, first);
  auto again = parse(first.str());
  REQUIRE(again.size() == trees.size());
  for (std::size_t s = 0; s < trees.size(); ++s) {
    for (std::size_t i = 0; i < trees[s].size(); ++i) {
      const Token& a = trees[s].tokens[i];
      const Token& b = again[s].tokens[i];
      CHECK(a.id == b.id);
      CHECK(a.form == b.form);
      CHECK(a.upos == b.upos);
      CHECK(a.head == b.head);
      CHECK(a.deprel == b.deprel);
    }
  }
  std::ostringstream second;
  write_conllu(again, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("empty tree list writes nothing") {
  std::ostringstream out;
  write_conllu(std::vector<DepTree>{}, out);
  CHECK(out.str().empty());
  CHECK(parse("").empty());
}

TEST_CASE("deprel with spaces survives byte for byte") {
  auto tree = make_tree({0, 1}, {"root", "odd relation name"});
  std::ostringstream out;
  write_conllu(tree, out);
  auto back = parse(out.str());
  CHECK(back[0].deprel(2) == "odd relation name");
  std::ostringstream again;
  write_conllu(back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("projectivity") {
  CHECK(is_projective(testing::kyrie_tree()));
  // word 1 <- word 3, word 4 <- word 2
  CHECK_FALSE(is_projective(make_tree({3, 0, 2, 2})));
  CHECK(is_projective(make_tree({0})));
  // an arc spanning the root word crosses the root arc
  CHECK_FALSE(is_projective(make_tree({2, 0, 1})));
}

TEST_CASE("crossing-arc check agrees with the dominance definition on all trees up to n = 6") {
  std::size_t trees = 0, nonprojective = 0;
  for (int n = 1; n <= 6; ++n) {
    testing::for_each_tree(n, false, [&](const DepTree& t) {
      ++trees;
      const bool fast = is_projective(t);
      nonprojective += !fast;
      if (fast != testing::projective_by_dominance(t)) FAIL_CHECK("disagreement on n=" << n);
    });
  }
  // (n+1)^(n-1) trees rooted at node 0
  CHECK(trees == 1 + 3 + 16 + 125 + 1296 + 16807);
  CHECK(nonprojective > 0);
}
