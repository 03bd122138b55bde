#include "translabel/transition.hpp"

#include <algorithm>

namespace translabel {

std::string_view to_string(SystemId system) {
  switch (system) {
    case SystemId::ArcStandard: return "arc-standard";
    case SystemId::ArcEager: return "arc-eager";
    case SystemId::ArcHybrid: return "arc-hybrid";
    case SystemId::Covington: return "covington";
  }
  return "?";
}

std::optional<SystemId> parse_system(std::string_view name) {
  for (SystemId s : kAllSystems)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::string_view mnemonic(Transition t) {
  switch (t) {
    case Transition::Shift: return "SH";
    case Transition::LeftArc: return "LA";
    case Transition::RightArc: return "RA";
    case Transition::Reduce: return "RE";
    case Transition::NoArc: return "NA";
  }
  return "?";
}

std::optional<Transition> parse_mnemonic(std::string_view s) {
  if (s == "SH") return Transition::Shift;
  if (s == "LA") return Transition::LeftArc;
  if (s == "RA") return Transition::RightArc;
  if (s == "RE") return Transition::Reduce;
  if (s == "NA") return Transition::NoArc;
  return std::nullopt;
}

std::string join_transitions(std::span<const Transition> ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += '-';
    out += mnemonic(ts[i]);
  }
  return out;
}

std::vector<std::optional<Transition>> split_transitions(std::string_view label) {
  std::vector<std::optional<Transition>> out;
  if (label.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t dash = label.find('-', start);
    std::string_view atom = label.substr(start, dash == std::string_view::npos ? dash : dash - start);
    out.push_back(parse_mnemonic(atom));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return out;
}

bool in_inventory(SystemId system, Transition t) {
  switch (t) {
    case Transition::Shift:
    case Transition::LeftArc:
    case Transition::RightArc: return true;
    case Transition::Reduce: return system == SystemId::ArcEager;
    case Transition::NoArc: return system == SystemId::Covington;
  }
  return false;
}

int lookahead_constant(SystemId system) {
  switch (system) {
    case SystemId::ArcStandard: return 0;
    case SystemId::ArcEager: return 1;
    case SystemId::ArcHybrid: return 1;
    case SystemId::Covington: return 0;
  }
  return 0;
}

Configuration Configuration::initial(SystemId system, int n) {
  Configuration c;
  c.n_ = n;
  c.heads_.assign(static_cast<std::size_t>(n) + 1, -1);
  if (system == SystemId::Covington) {
    c.front_ = 0;
  } else {
    c.front_ = 1;
    c.stack_.push_back(0);
  }
  return c;
}

std::vector<int> Configuration::buffer() const {
  std::vector<int> out;
  for (int v = front_; v <= n_; ++v) out.push_back(v);
  return out;
}

std::vector<Arc> Configuration::arcs() const {
  std::vector<Arc> out;
  for (int d = 1; d <= n_; ++d)
    if (heads_[static_cast<std::size_t>(d)] >= 0) out.emplace_back(heads_[static_cast<std::size_t>(d)], d);
  return out;
}

bool Configuration::dominates(int ancestor, int node) const {
  // heads_ is acyclic by construction, so the walk terminates.
  for (int v = node; v >= 0; v = heads_[static_cast<std::size_t>(v)])
    if (v == ancestor) return true;
  return false;
}

IllegalTransition::IllegalTransition(Transition t, std::string_view reason)
    : std::runtime_error(std::string(mnemonic(t)) + ": " + std::string(reason)), transition_(t) {}

namespace {

std::optional<std::string_view> check_attach(const Configuration& c, int head, int dep) {
  if (dep == 0) return "root cannot take a head";
  if (c.head_of(dep) >= 0) return "single head";
  if (c.dominates(dep, head)) return "acyclicity";
  return std::nullopt;
}

}  // namespace

std::optional<std::string_view> violated_condition(SystemId system, const Configuration& c, Transition t) {
  if (!in_inventory(system, t)) return "not in inventory";
  const auto& st = c.stack();
  const std::size_t depth = st.size();
  if (t == Transition::Shift) {
    if (c.buffer_empty()) return "empty buffer";
    return std::nullopt;
  }

  switch (system) {
    case SystemId::ArcStandard:
      if (depth < 2) return "stack too short";
      if (t == Transition::LeftArc) return check_attach(c, st[depth - 1], st[depth - 2]);
      return check_attach(c, st[depth - 2], st[depth - 1]);

    case SystemId::ArcEager:
      if (depth == 0) return "empty stack";
      if (t == Transition::Reduce) {
        if (c.head_of(st.back()) < 0) return "no head";
        return std::nullopt;
      }
      if (c.buffer_empty()) return "empty buffer";
      if (t == Transition::LeftArc) return check_attach(c, c.buffer_front(), st.back());
      return check_attach(c, st.back(), c.buffer_front());

    case SystemId::ArcHybrid:
      if (t == Transition::LeftArc) {
        if (depth == 0) return "empty stack";
        if (c.buffer_empty()) return "empty buffer";
        return check_attach(c, c.buffer_front(), st.back());
      }
      if (depth < 2) return "stack too short";
      return check_attach(c, st[depth - 2], st[depth - 1]);

    case SystemId::Covington:
      if (depth == 0) return "empty stack";
      if (t == Transition::NoArc) return std::nullopt;
      if (c.buffer_empty()) return "empty buffer";
      if (t == Transition::LeftArc) return check_attach(c, c.buffer_front(), st.back());
      return check_attach(c, st.back(), c.buffer_front());
  }
  return "unknown system";
}

bool is_read(SystemId system, const Configuration& c, Transition t) {
  switch (system) {
    case SystemId::ArcEager: return t == Transition::Shift || t == Transition::RightArc;
    case SystemId::Covington: return t == Transition::Shift && c.buffer_front() < c.sentence_length();
    default: return t == Transition::Shift;
  }
}

void advance(SystemId system, Configuration& c, Transition t) {
  if (auto why = violated_condition(system, c, t)) throw IllegalTransition(t, *why);

  auto attach = [&c](int head, int dep) {
    c.heads_[static_cast<std::size_t>(dep)] = head;
    c.max_arc_node_ = std::max({c.max_arc_node_, head, dep});
  };
  auto& st = c.stack_;

  if (system == SystemId::Covington) {
    switch (t) {
      case Transition::Shift:
        st.insert(st.end(), c.lambda2_rev_.rbegin(), c.lambda2_rev_.rend());
        c.lambda2_rev_.clear();
        st.push_back(c.front_++);
        return;
      case Transition::LeftArc: attach(c.front_, st.back()); break;
      case Transition::RightArc: attach(st.back(), c.front_); break;
      default: break;
    }
    c.lambda2_rev_.push_back(st.back());
    st.pop_back();
    return;
  }

  switch (t) {
    case Transition::Shift: st.push_back(c.front_++); return;
    case Transition::Reduce: st.pop_back(); return;
    case Transition::LeftArc:
      if (system == SystemId::ArcStandard) {
        const int s0 = st.back();
        attach(s0, st[st.size() - 2]);
        st.pop_back();
        st.back() = s0;
      } else {
        attach(c.front_, st.back());
        st.pop_back();
      }
      return;
    case Transition::RightArc:
      if (system == SystemId::ArcEager) {
        attach(st.back(), c.front_);
        st.push_back(c.front_++);
      } else {
        attach(st[st.size() - 2], st.back());
        st.pop_back();
      }
      return;
    case Transition::NoArc: return;
  }
}

Configuration apply(SystemId system, const Configuration& c, Transition t) {
  Configuration next = c;
  advance(system, next, t);
  return next;
}

bool is_terminal(SystemId system, const Configuration& c) {
  if (!c.buffer_empty()) return false;
  if (system == SystemId::Covington) return true;
  return c.stack().size() == 1 && c.stack().front() == 0;
}

Computation replay(SystemId system, int n, std::span<const Transition> transitions) {
  Computation comp{Configuration::initial(system, n), {transitions.begin(), transitions.end()}, {}};
  comp.final = comp.initial;
  for (Transition t : transitions) advance(system, comp.final, t);
  return comp;
}

VerificationReport verify_left_to_right(SystemId system, int n, std::span<const Transition> transitions, int k) {
  VerificationReport report;
  report.sentence_length = n;
  report.supplied_k = k;
  Configuration c = Configuration::initial(system, n);
  int worst = 0;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Transition t = transitions[i];
    const bool read = is_read(system, c, t);
    if (i == 0) report.first_is_read = read;
    advance(system, c, t);
    if (read) ++report.read_count;
    if (report.read_count >= 1) worst = std::max(worst, c.max_arc_node() - report.read_count);
  }
  report.condition1 = report.first_is_read && report.read_count == n;
  report.minimal_k = worst;
  report.condition2 = worst <= k;
  report.terminal = is_terminal(system, c);
  return report;
}

}  // namespace translabel
