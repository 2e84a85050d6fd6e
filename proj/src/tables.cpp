#include "tables.hpp"

#include <json.hpp>

#include <sstream>

#include "enumeration.hpp"

namespace sosdw {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_range(int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min) throw UsageError("tables: need 1 <= n_min <= n_max");
}

template <class R>
ordered_json poly_coeffs(const Poly<R>& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : p.c) arr.push_back({c.a.get_str(), c.b.get_str()});
    return arr;
}

} // namespace

std::string tables_csv(int n_min, int n_max) {
    check_range(n_min, n_max);
    std::ostringstream os;
    os << "n,A_n,C_n,K0,K1,K2,p0,p1,p2\n";
    for (int n = n_min; n <= n_max; ++n) {
        const ColourReport rep = colour_probabilities(n);
        os << n << ',' << rep.A.get_str() << ',' << rep.C.get_str();
        for (const auto& k : rep.K) os << ',' << k.get_str();
        for (const auto& p : rep.p) os << ',' << p.get_str();
        os << '\n';
    }
    return os.str();
}

std::string tables_json(int n_min, int n_max) {
    check_range(n_min, n_max);
    ordered_json j;
    j["schema"] = "sosdw/1";
    j["table"] = "colour-statistics";
    ordered_json rows = ordered_json::array();
    for (int n = n_min; n <= n_max; ++n) {
        const ColourReport rep = colour_probabilities(n);
        ordered_json row;
        row["n"] = n;
        row["A_n"] = rep.A.get_str();
        row["C_n"] = rep.C.get_str();
        row["K"] = {rep.K[0].get_str(), rep.K[1].get_str(), rep.K[2].get_str()};
        row["p"] = {rep.p[0].get_str(), rep.p[1].get_str(), rep.p[2].get_str()};
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string poly_identities_json(int n_max, int state_cap) {
    if (n_max < 1) throw UsageError("tables: need n_max >= 1");
    ordered_json j;
    j["schema"] = "sosdw/1";
    j["table"] = "polynomial-identities";
    ordered_json items = ordered_json::array();
    for (int n = 1; n <= n_max; ++n) {
        const EisensteinPair tc = three_colour_identity(n, state_cap);
        ordered_json e;
        e["name"] = "three-colour";
        e["ring"] = "Z[w]";
        e["n"] = n;
        e["equal"] = (tc.lhs == tc.rhs);
        e["lhs"] = poly_coeffs(tc.lhs);
        e["rhs"] = poly_coeffs(tc.rhs);
        items.push_back(std::move(e));

        const GaussianPair te = two_enumeration(n, state_cap);
        ordered_json g;
        g["name"] = "two-enumeration";
        g["ring"] = "Z[i]";
        g["n"] = n;
        g["equal"] = (te.lhs == te.rhs);
        g["lhs"] = poly_coeffs(te.lhs);
        g["rhs"] = poly_coeffs(te.rhs);
        items.push_back(std::move(g));
    }
    j["identities"] = std::move(items);
    return j.dump(2) + "\n";
}

} // namespace sosdw
