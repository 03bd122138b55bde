#include <set>
#include <sstream>

#include "doctest.h"
#include "translabel/labeling.hpp"
#include "translabel/tagger.hpp"
#include "trees.hpp"

using namespace translabel;

namespace {

TrainingSentence sentence_of(SystemId system, const DepTree& tree) {
  TrainingSentence s;
  s.forms = tree.forms();
  for (const auto& t : tree.tokens) s.upos.push_back(t.upos);
  s.labels = encode(system, tree);
  return s;
}

std::vector<TrainingSentence> corpus_of(SystemId system, const std::vector<DepTree>& trees) {
  std::vector<TrainingSentence> out;
  for (const auto& t : trees)
    if (system == SystemId::Covington || is_projective(t)) out.push_back(sentence_of(system, t));
  return out;
}

std::string dump(const TaggerModel& m) {
  std::ostringstream out;
  m.save(out);
  return out.str();
}

}  // namespace

TEST_CASE("feature extraction") {
  const std::vector<std::string> forms{"The", "cat", "sat"};
  const std::vector<std::string> upos{"DET", "_", "VERB"};
  auto fv = extract_features(forms, upos, 0);
  auto has = [](const std::vector<std::string>& v, const std::string& f) {
    return std::find(v.begin(), v.end(), f) != v.end();
  };
  CHECK(has(fv.lexical, "w[0]=The"));
  CHECK(has(fv.lexical, "l[0]=the"));
  CHECK(has(fv.lexical, "p2[0]=Th"));
  CHECK(has(fv.lexical, "s3[0]=The"));
  CHECK(has(fv.lexical, "u[0]=DET"));
  CHECK_FALSE(has(fv.lexical, "u[1]=_"));
  CHECK(has(fv.lexical, "w[2]=sat"));
  CHECK(has(fv.structural, "first"));
  CHECK(has(fv.structural, "w[-1]=<s>"));
  CHECK_FALSE(has(fv.structural, "last"));

  auto again = extract_features(forms, upos, 0);
  CHECK(again.lexical == fv.lexical);
  CHECK(again.structural == fv.structural);

  const std::vector<std::string> utf{"n\xC3\xA4me"};
  auto u = extract_features(utf, {}, 0);
  CHECK(has(u.lexical, "p2[0]=n\xC3\xA4"));
  CHECK(has(u.lexical, "s2[0]=me"));
  CHECK(has(u.structural, "last"));
}

TEST_CASE("training arguments are checked") {
  auto corpus = corpus_of(SystemId::ArcStandard, {testing::kyrie_tree()});
  CHECK_THROWS_AS(train(SystemId::ArcStandard, corpus, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(train(SystemId::ArcStandard, std::vector<TrainingSentence>{}, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(train(SystemId::ArcEager, corpus, 3, 1), std::invalid_argument);
}

TEST_CASE("memorises a repeated sentence") {
  const DepTree tree = testing::kyrie_tree();
  for (SystemId system : kAllSystems) {
    std::vector<TrainingSentence> corpus(50, sentence_of(system, tree));
    auto model = train(system, corpus, 3, 42);
    auto pred = model.predict(tree.forms());
    CHECK(pred.labels == corpus[0].labels.labels);
    DepTree back = decode(pred, tree.forms());
    for (int i = 1; i <= 10; ++i) CHECK(back.head(i) == tree.head(i));
  }
}

TEST_CASE("separates two sentences with disjoint vocabularies") {
  DepTree a = make_tree({2, 0, 2}, {"nsubj", "root", "obj"}, {"dogs", "chase", "cats"});
  DepTree b = make_tree({0, 1, 2, 3}, {"root", "x", "y", "z"}, {"one", "two", "three", "four"});
  auto corpus = corpus_of(SystemId::ArcHybrid, {a, b});
  auto model = train(SystemId::ArcHybrid, corpus, 10, 5);
  CHECK(model.predict(a.forms()).labels == corpus[0].labels.labels);
  CHECK(model.predict(b.forms()).labels == corpus[1].labels.labels);
}

TEST_CASE("unknown words get the fallback labels") {
  auto trees = testing::synthetic_treebank(100, 1);
  auto corpus = corpus_of(SystemId::ArcEager, trees);
  auto model = train(SystemId::ArcEager, corpus, 2, 9);
  const std::vector<std::string> forms{"\xE2\x98\x83", "\xE2\x98\x84", "\xE2\x98\x85"};
  auto pred = model.predict(forms);
  const auto& t = model.transitions();
  const auto& r = model.deprels();
  for (const auto& l : pred.labels) {
    CHECK(l.transitions == t.labels()[t.fallback()]);
    CHECK(l.deprel == r.labels()[r.fallback()]);
  }
  // the fallback is the most frequent training label
  std::map<std::string, std::size_t> counts;
  for (const auto& s : corpus)
    for (const auto& l : s.labels.labels) ++counts[l.deprel];
  auto most = std::max_element(counts.begin(), counts.end(),
                               [](const auto& x, const auto& y) { return x.second < y.second; });
  CHECK(r.labels()[r.fallback()] == most->first);
}

TEST_CASE("training is reproducible and the model file round-trips") {
  auto trees = testing::synthetic_treebank(150, 2);
  auto corpus = corpus_of(SystemId::Covington, trees);
  auto m1 = train(SystemId::Covington, corpus, 2, 77);
  auto m2 = train(SystemId::Covington, corpus, 2, 77);
  const std::string text = dump(m1);
  CHECK(text == dump(m2));
  CHECK(text.rfind("translabel-tagger 1\nsystem covington\nseed 77\nepochs 2\n", 0) == 0);

  std::istringstream in(text);
  TaggerModel loaded = TaggerModel::load(in);
  CHECK(loaded == m1);
  CHECK(dump(loaded) == text);

  auto held_out = testing::synthetic_treebank(20, 99);
  std::set<std::string> vocab(m1.transitions().labels().begin(), m1.transitions().labels().end());
  for (const auto& t : held_out) {
    auto pred = m1.predict(t.forms());
    CHECK(pred.labels == loaded.predict(t.forms()).labels);
    for (const auto& l : pred.labels) CHECK(vocab.count(l.transitions) == 1);
    DepTree d = decode(pred, t.forms());
    CHECK_NOTHROW(validate(d));
    CHECK(d.root_count() == 1);
  }

  auto m3 = train(SystemId::Covington, corpus, 2, 78);
  CHECK(m3.seed() == 78);
}

TEST_CASE("corrupt model files are rejected") {
  std::istringstream junk("not a model\n");
  CHECK_THROWS(TaggerModel::load(junk));
  auto corpus = corpus_of(SystemId::ArcStandard, {testing::kyrie_tree()});
  std::string text = dump(train(SystemId::ArcStandard, corpus, 1, 1));
  std::istringstream truncated(text.substr(0, text.size() / 2));
  CHECK_THROWS(TaggerModel::load(truncated));
}
