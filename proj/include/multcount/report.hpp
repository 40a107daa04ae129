#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace multcount {

enum class Relation { le, ge, eq };
std::string to_string(Relation r);

/// Outcome of checking one inequality, lhs <relation> rhs, exactly over Q.
struct BoundReport {
    std::string experiment;
    mpq_class lhs = 0;
    mpq_class rhs = 0;
    Relation relation = Relation::le;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> context;

    static BoundReport check(std::string experiment, mpq_class lhs, mpq_class rhs, Relation rel = Relation::le);
    BoundReport& with(std::string key, std::string value);
};

}  // namespace multcount
