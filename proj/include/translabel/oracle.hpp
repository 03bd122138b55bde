#pragma once

#include <stdexcept>
#include <vector>

#include "translabel/transition.hpp"
#include "translabel/treebank.hpp"

namespace translabel {

/// A projective system was asked to derive a non-projective tree.
class NonProjectiveInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleTrace {
  Computation computation;
  std::vector<Arc> arcs_in_order;
};

/// Canonical static oracle: the complete computation that builds `tree`.
///
/// arc-standard  LA if s0->s1; RA if s1->s0 and s0 has all its dependents; else SH.
/// arc-eager     LA if b->s; RA if s->b; RE if s has a head and b is linked to a word
///               left of s (or the buffer is empty); else SH.
/// arc-hybrid    LA if b->s0; RA if s1->s0 and s0 has all its dependents; else SH.
/// Covington     walking lambda1 from the top: LA if b->s; RA if s->b; NA while a deeper
///               word is still linked to b; else SH.
///
/// Throws NonProjectiveInput for the three projective systems on non-projective trees.
OracleTrace oracle(SystemId system, const DepTree& tree);

}  // namespace translabel
