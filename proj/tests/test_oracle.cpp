#include <algorithm>

#include "doctest.h"
#include "translabel/labeling.hpp"
#include "translabel/oracle.hpp"
#include "trees.hpp"

using namespace translabel;

namespace {

// Groups a transition sequence into per-word labels as the reference rows do,
// independently of the encoder: a new group starts at every read transition.
std::string grouped(SystemId system, const OracleTrace& trace) {
  Configuration c = trace.computation.initial;
  std::string out;
  std::size_t reads = 0;
  for (Transition t : trace.computation.transitions) {
    const bool read = is_read(system, c, t);
    const bool terminating = system == SystemId::Covington && t == Transition::Shift && !read;
    c = apply(system, c, t);
    if (terminating) continue;
    if (read && reads++ > 0) out += " | ";
    else if (!read) out += "-";
    out += mnemonic(t);
  }
  return out;
}

}  // namespace

TEST_CASE("arc-standard oracle on the ten-word example") {
  auto trace = oracle(SystemId::ArcStandard, testing::kyrie_tree());
  CHECK(grouped(SystemId::ArcStandard, trace) ==
        "SH | SH-LA | SH | SH | SH-LA-LA-RA | SH | SH | SH-LA-LA | SH | SH-LA-RA-RA-RA");
  CHECK(trace.computation.transitions.size() == 20);
  CHECK(is_terminal(SystemId::ArcStandard, trace.computation.final));
}

TEST_CASE("Covington oracle on the ten-word example keeps the terminating shift") {
  auto trace = oracle(SystemId::Covington, testing::kyrie_tree());
  CHECK(grouped(SystemId::Covington, trace) ==
        "SH | SH-LA-RA | SH | SH | SH-LA-LA-RA | SH | SH | SH-LA-LA-NA-NA-NA-RA | SH | SH-LA-RA");
  const auto& ts = trace.computation.transitions;
  CHECK(std::count(ts.begin(), ts.end(), Transition::Shift) == 11);
  CHECK(ts.back() == Transition::Shift);
}

TEST_CASE("single word under arc-standard") {
  auto trace = oracle(SystemId::ArcStandard, make_tree({0}));
  CHECK(trace.computation.transitions == std::vector<Transition>{Transition::Shift, Transition::RightArc});
  CHECK(trace.computation.final.stack() == std::vector<int>{0});
  CHECK(trace.arcs_in_order == std::vector<Arc>{{0, 1}});
}

TEST_CASE("arcs are recorded in creation order") {
  auto trace = oracle(SystemId::ArcStandard, testing::kyrie_tree());
  REQUIRE(trace.arcs_in_order.size() == 10);
  CHECK(trace.arcs_in_order.front() == Arc{2, 1});
  CHECK(trace.arcs_in_order.back() == Arc{0, 2});
}

TEST_CASE("projective systems reject non-projective trees") {
  const DepTree crossing = make_tree({3, 0, 2, 2});
  for (SystemId s : {SystemId::ArcStandard, SystemId::ArcEager, SystemId::ArcHybrid})
    CHECK_THROWS_AS(oracle(s, crossing), NonProjectiveInput);
  CHECK_NOTHROW(oracle(SystemId::Covington, crossing));
}

TEST_CASE("oracle soundness and determinism over every small tree") {
  for (SystemId system : kAllSystems) {
    const int max_n = system == SystemId::Covington ? 5 : 6;
    std::size_t checked = 0;
    for (int n = 1; n <= max_n; ++n) {
      testing::for_each_tree(n, false, [&](const DepTree& tree) {
        if (system != SystemId::Covington && !is_projective(tree)) return;
        ++checked;
        const OracleTrace trace = oracle(system, tree);
        const auto& ts = trace.computation.transitions;

        // replay from scratch reaches the gold arcs
        Computation again = replay(system, n, ts);
        bool exact = again.final == trace.computation.final;
        for (const auto& tok : tree.tokens) exact = exact && again.final.head_of(tok.id) == tok.head;
        if (!exact) FAIL_CHECK(to_string(system) << ": wrong arcs for n=" << n);

        if (oracle(system, tree).computation.transitions != ts) FAIL_CHECK("non-deterministic oracle");

        auto report = verify_left_to_right(system, n, ts, lookahead_constant(system));
        if (!report.condition1 || !report.condition2 || !report.terminal)
          FAIL_CHECK(to_string(system) << ": left-to-right check failed for n=" << n);

        const std::size_t steps = ts.size();
        const std::size_t two_n = 2 * static_cast<std::size_t>(n);
        switch (system) {
          case SystemId::ArcStandard:
          case SystemId::ArcHybrid:
            if (steps != two_n) FAIL_CHECK("expected exactly 2n transitions");
            break;
          case SystemId::ArcEager:
            if (steps > two_n) FAIL_CHECK("expected at most 2n transitions");
            break;
          case SystemId::Covington:
            if (steps > static_cast<std::size_t>(n * (n + 1) / 2 + n + 1)) FAIL_CHECK("too many transitions");
            break;
        }
      });
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("each arc set stays single-headed and acyclic along oracle computations") {
  for (int n = 1; n <= 5; ++n) {
    testing::for_each_tree(n, false, [&](const DepTree& tree) {
      for (SystemId system : kAllSystems) {
        if (system != SystemId::Covington && !is_projective(tree)) continue;
        Configuration c = Configuration::initial(system, n);
        for (Transition t : oracle(system, tree).computation.transitions) {
          c = apply(system, c, t);
          DepTree partial = make_tree(std::vector<int>(c.heads().begin() + 1, c.heads().end()));
          for (auto& tok : partial.tokens)
            if (tok.head < 0) tok.head = 0;  // a forest is a tree once orphans hang from 0
          try {
            validate(partial);
          } catch (const ValidationError&) {
            FAIL_CHECK("cyclic partial arc set");
          }
        }
      }
    });
  }
}
