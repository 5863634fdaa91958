#pragma once

#include <vector>

#include "qreflect/rep.hpp"
#include "qreflect/report.hpp"

namespace qreflect {

/// Defining-relation sweep on a module's generator matrices: Cartan
/// commutativity, Cartan action on simple raising/lowering generators, the
/// raise/lower pairing against the balanced q-number of the Cartan difference,
/// distant commutativity, cubic Serre relations, the central element, weight
/// additivity of every generator, and independence of the root-vector
/// recursion from the chosen intermediate index.
std::vector<CheckResult> check_gl_relations(const Rep& rep);

/// Catalogue of relations among non-simple root vectors: the thirteen
/// ordering/exchange families (tags a1.1 .. a1.13, with mirrored variants
/// a1.1b .. a1.13b obtained by inverting q and swapping in the barred
/// generators), the mixed resummation chains (eeb1, eeb1-2, eeb2, eeb2-2,
/// eeb3, eeb3-2), and the bracket shift identities (brabra1 .. brabra3).
std::vector<CheckResult> check_appendix_relations(const Rep& rep);

}  // namespace qreflect
