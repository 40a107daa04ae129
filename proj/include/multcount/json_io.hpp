#pragma once

#include "multcount/harness.hpp"

#include <json.hpp>

namespace multcount::jsonio {

using json = nlohmann::ordered_json;

/// JSON number when the value fits in 64 bits, decimal string otherwise.
json integer(const Integer& v);
/// Integer form when the denominator is 1, "a/b" string otherwise.
json rational(const mpq_class& v);
/// Array of decimal strings.
json point(const ProjPoint& p);

json report(const BoundReport& r);
json asymptotics(const AsymptoticsReport& r);
json bezout(const BezoutCheck& b);
json main_theorem(const MainTheoremCheck& m);
json corollary(const CorollaryReport& c);

}  // namespace multcount::jsonio
