#include "multcount/report.hpp"

namespace multcount {

std::string to_string(Relation r) {
    switch (r) {
        case Relation::le: return "<=";
        case Relation::ge: return ">=";
        case Relation::eq: return "==";
    }
    return "?";
}

BoundReport BoundReport::check(std::string experiment, mpq_class lhs, mpq_class rhs, Relation rel) {
    BoundReport r;
    r.experiment = std::move(experiment);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.relation = rel;
    switch (rel) {
        case Relation::le: r.pass = r.lhs <= r.rhs; break;
        case Relation::ge: r.pass = r.lhs >= r.rhs; break;
        case Relation::eq: r.pass = r.lhs == r.rhs; break;
    }
    return r;
}

BoundReport& BoundReport::with(std::string key, std::string value) {
    context.emplace_back(std::move(key), std::move(value));
    return *this;
}

}  // namespace multcount
