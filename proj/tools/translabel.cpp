#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "translabel/eval.hpp"
#include "translabel/labeling.hpp"
#include "translabel/oracle.hpp"
#include "translabel/tagger.hpp"
#include "translabel/treebank.hpp"

using namespace translabel;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kInvariant = 3;

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
  static const Level level = [] {
    const char* env = std::getenv("TRANSLABEL_LOG");
    std::string v = env ? env : "info";
    if (v == "error") return Level::Error;
    if (v == "warn") return Level::Warn;
    if (v == "debug") return Level::Debug;
    return Level::Info;
  }();
  return level;
}

void log(Level level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= log_level()) std::cerr << "translabel: " << names[static_cast<int>(level)] << ": " << msg << '\n';
}

// Summaries always print, whatever the log level.
void summary(const std::string& line) { std::cerr << line << '\n'; }

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string system = "";
  std::string on_nonprojective = "skip";
  unsigned jobs = 1;
  std::string output;
  std::string input;
  std::string second;
  std::string model;
  int epochs = 5;
  std::uint64_t seed = 1;
  bool decode_output = false;
  bool ignore_punct = false;
};

// Results land at their input index, so output order never depends on the job count.
template <class Out, class In>
std::vector<Out> parallel_map(const std::vector<In>& items, unsigned jobs, const std::function<Out(const In&)>& fn) {
  std::vector<Out> out(items.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(items.size(), 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
          try {
            out[i] = fn(items[i]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<SystemId> systems_of(const Options& o, bool allow_all) {
  if (allow_all && o.system == "all") return {kAllSystems.begin(), kAllSystems.end()};
  auto s = parse_system(o.system);
  if (!s) throw CLI::ValidationError("--system", "unknown system '" + o.system + "'");
  return {*s};
}

std::vector<DepTree> read_trees(const std::string& path) {
  if (path == "-" || path.empty()) return read_conllu(std::cin);
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_conllu(in);
}

LabelFile read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_label_file(in);
}

// Writes to -o if given, stdout otherwise.
void emit(const Options& o, const std::function<void(std::ostream&)>& write) {
  if (o.output.empty() || o.output == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw DataError("cannot write " + o.output);
  write(out);
  if (!out) throw DataError("write failed: " + o.output);
}

bool sniff_label_file(const std::string& path) {
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  return first.rfind("# system = ", 0) == 0;
}

struct Encoded {
  std::optional<LabeledSentence> sentence;
  std::string skipped_reason;
};

int cmd_encode(const Options& o) {
  const SystemId system = systems_of(o, false).front();
  const auto trees = read_trees(o.input);
  const bool fail = o.on_nonprojective == "fail";
  auto results = parallel_map<Encoded, DepTree>(trees, o.jobs, [&](const DepTree& t) {
    Encoded e;
    try {
      LabeledSentence s{t.forms(), encode(system, t).labels};
      e.sentence = std::move(s);
    } catch (const NonProjectiveInput& ex) {
      e.skipped_reason = ex.what();
    }
    return e;
  });

  LabelFile file{system, {}};
  VocabReport vocab;
  vocab.system = system;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].sentence) {
      if (fail) throw DataError("sentence " + std::to_string(i + 1) + " is non-projective");
      log(Level::Debug, "skipping sentence " + std::to_string(i + 1) + ": " + results[i].skipped_reason);
      ++vocab.skipped;
      continue;
    }
    vocab.add(LabelSequence{system, results[i].sentence->labels});
    file.sentences.push_back(std::move(*results[i].sentence));
  }
  emit(o, [&](std::ostream& out) { write_label_file(file, out); });
  summary("encoded " + std::to_string(vocab.sentences) + " skipped " + std::to_string(vocab.skipped) +
          " task1 " + std::to_string(vocab.task1_size()) + " task2 " + std::to_string(vocab.task2_size()));
  return kOk;
}

struct Decoded {
  DepTree tree;
  DecodeStats stats;
};

std::vector<Decoded> decode_all(SystemId system, const std::vector<LabeledSentence>& sentences, unsigned jobs) {
  return parallel_map<Decoded, LabeledSentence>(sentences, jobs, [&](const LabeledSentence& s) {
    Decoded d;
    d.tree = decode(system, s.labels, s.forms, &d.stats);
    return d;
  });
}

std::string stats_line(const DecodeStats& s) {
  std::ostringstream out;
  out << "repaired actions " << s.repaired_actions() << " (unknown " << s.unknown_mnemonics << ", illegal "
      << s.illegal_skipped << ", extra reads " << s.extra_reads_skipped << ", forced reads " << s.forced_reads
      << ") root repairs: deprel " << s.roots_from_deprel << ", first word " << s.first_token_roots
      << ", extra roots " << s.extra_roots_linked << ", headless " << s.headless_attached;
  return out.str();
}

int cmd_decode(const Options& o) {
  const SystemId system = systems_of(o, false).front();
  LabelFile file = read_labels(o.input);
  if (file.system != system)
    throw DataError("label file was written for " + std::string(to_string(file.system)) + ", not " + o.system);
  auto decoded = decode_all(system, file.sentences, o.jobs);
  DecodeStats total;
  std::vector<DepTree> trees;
  for (auto& d : decoded) {
    total += d.stats;
    trees.push_back(std::move(d.tree));
  }
  emit(o, [&](std::ostream& out) { write_conllu(trees, out); });
  summary("decoded " + std::to_string(trees.size()) + " " + stats_line(total));
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto trees = read_trees(o.input);
  bool ok = true;
  std::ostringstream table;
  table << std::left << std::setw(14) << "system" << std::setw(10) << "checked" << std::setw(10) << "skipped"
        << std::setw(12) << "condition1" << "minimal_k\n";
  for (SystemId system : systems_of(o, true)) {
    std::size_t checked = 0, skipped = 0, passed = 0;
    int k = 0;
    for (const auto& t : trees) {
      OracleTrace trace;
      try {
        trace = oracle(system, t);
      } catch (const NonProjectiveInput&) {
        ++skipped;
        continue;
      }
      ++checked;
      auto r = verify_left_to_right(system, static_cast<int>(t.size()), trace.computation.transitions,
                                    lookahead_constant(system));
      if (r.condition1) ++passed;
      k = std::max(k, r.minimal_k);
    }
    const double rate = checked ? 100.0 * static_cast<double>(passed) / static_cast<double>(checked) : 100.0;
    ok = ok && passed == checked;
    table << std::setw(14) << to_string(system) << std::setw(10) << checked << std::setw(10) << skipped
          << std::setw(12) << (std::ostringstream() << std::fixed << std::setprecision(2) << rate).str() << k
          << '\n';
  }
  emit(o, [&](std::ostream& out) { out << table.str(); });
  if (!ok) {
    log(Level::Error, "condition 1 failed on some sentences");
    return kInvariant;
  }
  return kOk;
}

int cmd_stats(const Options& o) {
  const auto trees = read_trees(o.input);
  std::ostringstream table;
  table << std::left << std::setw(14) << "system" << std::setw(11) << "sentences" << std::setw(9) << "skipped"
        << std::setw(7) << "task1" << "task2\n";
  for (SystemId system : systems_of(o, true)) {
    VocabReport v = label_vocabulary(system, trees);
    table << std::setw(14) << to_string(system) << std::setw(11) << v.sentences << std::setw(9) << v.skipped
          << std::setw(7) << v.task1_size() << v.task2_size() << '\n';
  }
  emit(o, [&](std::ostream& out) { out << table.str(); });
  return kOk;
}

std::vector<std::string> upos_of(const DepTree& t) {
  std::vector<std::string> upos;
  for (const auto& tok : t.tokens) upos.push_back(tok.upos);
  return upos;
}

int cmd_train(const Options& o) {
  const SystemId system = systems_of(o, false).front();
  const auto trees = read_trees(o.input);
  std::vector<TrainingSentence> corpus;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    try {
      corpus.push_back({trees[i].forms(), upos_of(trees[i]), encode(system, trees[i])});
    } catch (const NonProjectiveInput&) {
      if (o.on_nonprojective == "fail") throw DataError("sentence " + std::to_string(i + 1) + " is non-projective");
      ++skipped;
    }
  }
  if (corpus.empty()) throw DataError("no trainable sentences in " + o.input);
  log(Level::Info, "training on " + std::to_string(corpus.size()) + " sentences");
  TaggerModel model = train(system, corpus, o.epochs, o.seed);
  const std::string path = o.model.empty() ? o.output : o.model;
  if (path.empty()) throw CLI::ValidationError("--model", "train needs --model or -o");
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  model.save(out);
  summary("trained " + std::to_string(corpus.size()) + " skipped " + std::to_string(skipped) + " task1 " +
          std::to_string(model.transitions().labels().size()) + " task2 " +
          std::to_string(model.deprels().labels().size()));
  return kOk;
}

int cmd_predict(const Options& o) {
  if (o.model.empty()) throw CLI::ValidationError("--model", "predict needs --model");
  std::ifstream min(o.model);
  if (!min) throw DataError("cannot open " + o.model);
  const TaggerModel model = TaggerModel::load(min);
  if (!o.system.empty() && parse_system(o.system) != model.system())
    throw DataError("model was trained for " + std::string(to_string(model.system())));
  const auto trees = read_trees(o.input);

  auto labels = parallel_map<LabeledSentence, DepTree>(trees, o.jobs, [&](const DepTree& t) {
    auto forms = t.forms();
    auto upos = upos_of(t);
    return LabeledSentence{forms, model.predict(forms, upos).labels};
  });

  if (!o.decode_output) {
    LabelFile file{model.system(), std::move(labels)};
    emit(o, [&](std::ostream& out) { write_label_file(file, out); });
    summary("predicted " + std::to_string(trees.size()));
    return kOk;
  }

  auto decoded = decode_all(model.system(), labels, o.jobs);
  DecodeStats total;
  std::vector<DepTree> out_trees;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    total += decoded[i].stats;
    // keep the input annotation, replace only the syntax
    DepTree t = trees[i];
    for (std::size_t w = 0; w < t.tokens.size(); ++w) {
      t.tokens[w].head = decoded[i].tree.tokens[w].head;
      t.tokens[w].deprel = decoded[i].tree.tokens[w].deprel;
      t.tokens[w].deps = "_";
    }
    out_trees.push_back(std::move(t));
  }
  emit(o, [&](std::ostream& out) { write_conllu(out_trees, out); });
  summary("predicted " + std::to_string(out_trees.size()) + " " + stats_line(total));
  return kOk;
}

int cmd_eval(const Options& o) {
  if (sniff_label_file(o.input) && sniff_label_file(o.second)) {
    LabelFile gold = read_labels(o.input), pred = read_labels(o.second);
    if (gold.system != pred.system) throw DataError("label files use different systems");
    auto acc = label_accuracy(gold.sentences, pred.sentences);
    emit(o, [&](std::ostream& out) { out << acc.to_text() << acc.to_record() << '\n'; });
    return kOk;
  }
  const auto gold = read_trees(o.input);
  const auto pred = read_trees(o.second);
  auto report = score(gold, pred, {.ignore_punct = o.ignore_punct});
  emit(o, [&](std::ostream& out) { out << report.to_text() << report.to_record() << '\n'; });
  return kOk;
}

int cmd_roundtrip(const Options& o) {
  const auto trees = read_trees(o.input);
  bool ok = true;
  for (SystemId system : systems_of(o, true)) {
    std::vector<DepTree> gold;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      if (system != SystemId::Covington && !is_projective(trees[i])) {
        if (o.on_nonprojective == "fail") throw DataError("sentence " + std::to_string(i + 1) + " is non-projective");
        ++skipped;
        continue;
      }
      gold.push_back(trees[i]);
    }
    auto back = parallel_map<DepTree, DepTree>(gold, o.jobs, [&](const DepTree& t) {
      return decode(encode(system, t), t.forms());
    });
    auto report = score(gold, back);
    const bool exact = report.head_correct == report.tokens && report.labeled_correct == report.tokens;
    ok = ok && exact;
    summary(std::string(to_string(system)) + " " + report.to_record() + " skipped=" + std::to_string(skipped) +
            (exact ? " ok" : " FAILED"));
  }
  return ok ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translabel: dependency parsing as sequence labeling"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_system = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--system", o.system, "arc-standard, arc-eager, arc-hybrid or covington");
    if (required) opt->required();
  };
  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--on-nonprojective", o.on_nonprojective, "skip or fail")
        ->check(CLI::IsMember({"skip", "fail"}));
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", o.output, "output file (default stdout)");
  };

  auto* encode_cmd = app.add_subcommand("encode", "CoNLL-U to label file");
  auto* decode_cmd = app.add_subcommand("decode", "label file to CoNLL-U");
  auto* verify_cmd = app.add_subcommand("verify", "check oracle traces are left-to-right");
  auto* stats_cmd = app.add_subcommand("stats", "label vocabulary sizes");
  auto* train_cmd = app.add_subcommand("train", "train the tagger");
  auto* predict_cmd = app.add_subcommand("predict", "tag sentences with a trained model");
  auto* eval_cmd = app.add_subcommand("eval", "score predictions against gold");
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "encode, decode and score against the input");

  for (auto* sub : {encode_cmd, decode_cmd, verify_cmd, stats_cmd, train_cmd, predict_cmd, eval_cmd, roundtrip_cmd})
    add_shared(sub);
  for (auto* sub : {encode_cmd, decode_cmd, train_cmd}) add_system(sub, true);
  add_system(verify_cmd, true);
  add_system(stats_cmd, true);
  add_system(roundtrip_cmd, true);
  add_system(predict_cmd, false);

  for (auto* sub : {encode_cmd, decode_cmd, verify_cmd, stats_cmd, train_cmd, predict_cmd, roundtrip_cmd})
    sub->add_option("input", o.input, "input file")->required();
  eval_cmd->add_option("gold", o.input, "gold file")->required();
  eval_cmd->add_option("predicted", o.second, "predicted file")->required();
  eval_cmd->add_flag("--ignore-punct", o.ignore_punct, "leave punctuation out of the scores");

  train_cmd->add_option("--model", o.model, "model file to write");
  train_cmd->add_option("--epochs", o.epochs, "training epochs")->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", o.seed, "shuffle seed");
  predict_cmd->add_option("--model", o.model, "model file")->required();
  predict_cmd->add_flag("--decode", o.decode_output, "write CoNLL-U instead of labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "encode") return cmd_encode(o);
    if (name == "decode") return cmd_decode(o);
    if (name == "verify") return cmd_verify(o);
    if (name == "stats") return cmd_stats(o);
    if (name == "train") return cmd_train(o);
    if (name == "predict") return cmd_predict(o);
    if (name == "eval") return cmd_eval(o);
    return cmd_roundtrip(o);
  } catch (const CLI::ValidationError& e) {
    log(Level::Error, e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    log(Level::Error, e.what());
    return kData;
  } catch (const IllegalTransition& e) {
    log(Level::Error, std::string("internal: ") + e.what());
    return kInvariant;
  } catch (const std::logic_error& e) {
    log(Level::Error, std::string("internal: ") + e.what());
    return kInvariant;
  } catch (const std::exception& e) {
    log(Level::Error, e.what());
    return kData;
  }
}
