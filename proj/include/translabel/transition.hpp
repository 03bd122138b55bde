#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace translabel {

enum class SystemId { ArcStandard, ArcEager, ArcHybrid, Covington };

inline constexpr std::array<SystemId, 4> kAllSystems = {SystemId::ArcStandard, SystemId::ArcEager,
                                                        SystemId::ArcHybrid, SystemId::Covington};

/// "arc-standard", "arc-eager", "arc-hybrid", "covington".
std::string_view to_string(SystemId system);
std::optional<SystemId> parse_system(std::string_view name);

enum class Transition { Shift, LeftArc, RightArc, Reduce, NoArc };

/// Canonical mnemonics: SH, LA, RA, RE, NA.
std::string_view mnemonic(Transition t);
std::optional<Transition> parse_mnemonic(std::string_view s);

/// '-'-joined mnemonics, e.g. "SH-LA-RA".
std::string join_transitions(std::span<const Transition> ts);
/// Splits on '-'. Unknown atoms come back as nullopt so callers can decide what to
/// do with them; the decoder skips them.
std::vector<std::optional<Transition>> split_transitions(std::string_view label);

bool in_inventory(SystemId system, Transition t);

/// Offset between executed reads and the rightmost word an arc may touch:
/// 0, 1, 1, 0 for arc-standard, arc-eager, arc-hybrid, Covington.
int lookahead_constant(SystemId system);

using Arc = std::pair<int, int>;  // (head, dependent)

/// Parser state shared by all four systems.
///
/// Stack systems use `stack` as sigma (bottom is node 0). Covington uses `stack` as
/// lambda1 and `lambda2` for the second list. The buffer is always a contiguous
/// suffix of the sentence, so it is stored as the index of its front; Covington's
/// buffer starts at node 0, the others at node 1.
class Configuration {
 public:
  static Configuration initial(SystemId system, int n);

  int sentence_length() const { return n_; }
  const std::vector<int>& stack() const { return stack_; }
  /// lambda2 in list order (front first).
  std::vector<int> lambda2() const { return {lambda2_rev_.rbegin(), lambda2_rev_.rend()}; }
  bool buffer_empty() const { return front_ > n_; }
  int buffer_front() const { return front_; }
  std::vector<int> buffer() const;

  /// Head of node `v`, or -1 if it has none yet. Node 0 never has one.
  int head_of(int v) const { return heads_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& heads() const { return heads_; }
  std::vector<Arc> arcs() const;
  /// Largest node id touched by any arc so far (0 when there are none).
  int max_arc_node() const { return max_arc_node_; }

  /// True iff `ancestor` is reachable from `node` by following heads.
  bool dominates(int ancestor, int node) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  friend void advance(SystemId system, Configuration& c, Transition t);

  int n_ = 0;
  int front_ = 1;
  std::vector<int> stack_;
  std::vector<int> lambda2_rev_;
  std::vector<int> heads_;
  int max_arc_node_ = 0;
};

class IllegalTransition : public std::runtime_error {
 public:
  IllegalTransition(Transition t, std::string_view reason);
  Transition transition() const { return transition_; }

 private:
  Transition transition_;
};

/// Name of the violated condition ("single head", "acyclicity", "empty stack", ...),
/// or nullopt if `t` is applicable.
std::optional<std::string_view> violated_condition(SystemId system, const Configuration& c, Transition t);

inline bool preconditions(SystemId system, const Configuration& c, Transition t) {
  return !violated_condition(system, c, t).has_value();
}

/// Whether `t`, applied in `c`, is one of the system's read transitions.
/// Covington's last shift (the one that moves word n out of the buffer) only
/// terminates the computation and is not counted as a read.
bool is_read(SystemId system, const Configuration& c, Transition t);

/// Successor configuration. `c` is not modified. Throws IllegalTransition.
Configuration apply(SystemId system, const Configuration& c, Transition t);

/// In-place variant of apply for hot loops. Throws IllegalTransition and leaves `c`
/// untouched on failure.
void advance(SystemId system, Configuration& c, Transition t);

/// Stack systems: empty buffer and stack == [0]. Covington: empty buffer.
bool is_terminal(SystemId system, const Configuration& c);

struct Computation {
  Configuration initial;
  std::vector<Transition> transitions;
  Configuration final;
};

Computation replay(SystemId system, int n, std::span<const Transition> transitions);

struct VerificationReport {
  int sentence_length = 0;
  int read_count = 0;
  bool first_is_read = false;
  /// Exactly n reads and the first transition is one of them.
  bool condition1 = false;
  /// Smallest k such that every prefix with i >= 1 reads only has arcs over 0..i+k.
  int minimal_k = 0;
  int supplied_k = 0;
  bool condition2 = false;
  bool terminal = false;
};

VerificationReport verify_left_to_right(SystemId system, int n, std::span<const Transition> transitions, int k);

}  // namespace translabel
