#pragma once

#include "tensorlift/model.hpp"

namespace tensorlift {

/// Builds the full built-in theorem suite instantiated on the model's chart
/// and declared fields: lift algebra laws on seeded random polynomial fields,
/// composition/action laws and Nijenhuis commutation for every declared
/// endomorphism, and the extended-structure and Lie-derivative identities for
/// every declared almost-contact triple (including the informational order-2
/// square expansion probe). All randomness derives from the suite seed.
std::vector<Check> build_theorem_suite(const ModelSet& model, const SuiteOptions& opts);

}  // namespace tensorlift
