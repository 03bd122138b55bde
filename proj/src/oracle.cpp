#include "translabel/oracle.hpp"

#include <algorithm>
#include <string>

namespace translabel {

namespace {

class GoldIndex {
 public:
  explicit GoldIndex(const DepTree& tree) : head_(tree.size() + 1, -1), pending_(tree.size() + 1, 0) {
    for (const auto& t : tree.tokens) {
      head_[static_cast<std::size_t>(t.id)] = t.head;
      ++pending_[static_cast<std::size_t>(t.head)];
    }
  }

  bool has_arc(int h, int d) const { return d > 0 && head_[static_cast<std::size_t>(d)] == h; }
  bool linked(int a, int b) const { return has_arc(a, b) || has_arc(b, a); }
  bool complete(int v) const { return pending_[static_cast<std::size_t>(v)] == 0; }
  void attached(int h) { --pending_[static_cast<std::size_t>(h)]; }

 private:
  std::vector<int> head_;
  std::vector<int> pending_;  // gold dependents not yet attached
};

Transition next_arc_standard(const Configuration& c, const GoldIndex& gold) {
  const auto& st = c.stack();
  if (st.size() >= 2) {
    const int s0 = st.back();
    const int s1 = st[st.size() - 2];
    if (gold.has_arc(s0, s1)) return Transition::LeftArc;
    if (gold.has_arc(s1, s0) && gold.complete(s0)) return Transition::RightArc;
  }
  return Transition::Shift;
}

Transition next_arc_eager(const Configuration& c, const GoldIndex& gold) {
  const int s = c.stack().back();
  if (c.buffer_empty()) return Transition::Reduce;
  const int b = c.buffer_front();
  if (gold.has_arc(b, s)) return Transition::LeftArc;
  if (gold.has_arc(s, b)) return Transition::RightArc;
  if (c.head_of(s) >= 0) {
    for (int k = 0; k < s; ++k)
      if (gold.linked(k, b)) return Transition::Reduce;
  }
  return Transition::Shift;
}

Transition next_arc_hybrid(const Configuration& c, const GoldIndex& gold) {
  const auto& st = c.stack();
  const int s0 = st.back();
  if (!c.buffer_empty() && gold.has_arc(c.buffer_front(), s0)) return Transition::LeftArc;
  if (st.size() >= 2 && gold.has_arc(st[st.size() - 2], s0) && gold.complete(s0)) return Transition::RightArc;
  return Transition::Shift;
}

Transition next_covington(const Configuration& c, const GoldIndex& gold) {
  const auto& l1 = c.stack();
  if (l1.empty()) return Transition::Shift;
  const int b = c.buffer_front();
  const int s = l1.back();
  if (gold.has_arc(b, s)) return Transition::LeftArc;
  if (gold.has_arc(s, b)) return Transition::RightArc;
  for (std::size_t i = 0; i + 1 < l1.size(); ++i)
    if (gold.linked(l1[i], b)) return Transition::NoArc;
  return Transition::Shift;
}

}  // namespace

OracleTrace oracle(SystemId system, const DepTree& tree) {
  if (system != SystemId::Covington && !is_projective(tree))
    throw NonProjectiveInput(std::string(to_string(system)) + " cannot derive a non-projective tree");

  const int n = static_cast<int>(tree.size());
  GoldIndex gold(tree);
  OracleTrace trace;
  trace.computation.initial = Configuration::initial(system, n);
  Configuration c = trace.computation.initial;

  // Every system finishes in O(n^2) steps; anything longer means the oracle is stuck.
  const std::size_t limit = 4 * static_cast<std::size_t>(n + 2) * static_cast<std::size_t>(n + 2);
  while (!is_terminal(system, c)) {
    Transition t{};
    switch (system) {
      case SystemId::ArcStandard: t = next_arc_standard(c, gold); break;
      case SystemId::ArcEager: t = next_arc_eager(c, gold); break;
      case SystemId::ArcHybrid: t = next_arc_hybrid(c, gold); break;
      case SystemId::Covington: t = next_covington(c, gold); break;
    }
    const std::vector<int> before = c.heads();
    advance(system, c, t);
    for (int d = 1; d <= n; ++d) {
      const int h = c.head_of(d);
      if (h != before[static_cast<std::size_t>(d)]) {
        trace.arcs_in_order.emplace_back(h, d);
        gold.attached(h);
      }
    }
    trace.computation.transitions.push_back(t);
    if (trace.computation.transitions.size() > limit)
      throw std::logic_error("oracle did not terminate for " + std::string(to_string(system)));
  }
  trace.computation.final = c;

  for (const auto& tok : tree.tokens)
    if (c.head_of(tok.id) != tok.head)
      throw std::logic_error("oracle for " + std::string(to_string(system)) + " missed the head of word " +
                             std::to_string(tok.id));
  return trace;
}

}  // namespace translabel
