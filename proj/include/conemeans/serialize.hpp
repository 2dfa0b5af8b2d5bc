#pragma once

#include <json.hpp>

#include "conemeans/chains.hpp"
#include "conemeans/lattice.hpp"
#include "conemeans/refutation.hpp"
#include "conemeans/report.hpp"
#include "conemeans/walks.hpp"

namespace conemeans {

using Json = nlohmann::json;

// Rationals are always "p/q" strings. Malformed input throws InputError.

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const Group& g);
Group group_from_json(const Json& j);

Json to_json(const Space& s);
Space space_from_json(const Json& j);

/// Includes the space unless `with_space` is false.
Json to_json(const Vector& v, bool with_space = true);
/// `context` supplies the space when the JSON omits it.
Vector vector_from_json(const Json& j, const Space* context = nullptr);

Json to_json(const Functional& f, const Space& space);
Functional functional_from_json(const Json& j, const Space& space);

Json to_json(const Domain& d);
Domain domain_from_json(const Json& j, const Space& space);

Json to_json(const PartialFunctional& p, const Space& space);
PartialFunctional partial_from_json(const Json& j, const Space& space);

Json to_json(const Chain& c);
/// Validates through validate_chain.
Chain chain_from_json(const Json& j);

Json to_json(const Measure& m);
Measure measure_from_json(const Json& j);

Json to_json(const Report& r);

Json to_json(const ObstructionCertificate& c);
ObstructionCertificate obstruction_from_json(const Json& j);

Json to_json(const RefutationCertificate& c);
RefutationCertificate refutation_from_json(const Json& j);

Json to_json(const CPTable& t);
/// Either explicit entries or {"ground": n, "measures": [[...], ...]}.
CPTable cptable_from_json(const Json& j);

}  // namespace conemeans
