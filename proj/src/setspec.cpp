#include "fpe/setspec.hpp"

#include <charconv>
#include <vector>

#include "fpe/rng.hpp"

namespace fpe {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

int64_t parse_int(const std::string& tok) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw SetSpecError(tok, "not an integer");
    return v;
}

double parse_real(const std::string& tok) {
    try {
        size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw SetSpecError(tok, "not a real number");
    }
}

}  // namespace

FpSet parse_set_spec(const std::string& spec, FieldPtr field) {
    if (!field) throw std::invalid_argument("parse_set_spec: field required");
    const uint32_t p = field->p();
    const size_t colon = spec.find(':');
    if (colon == std::string::npos) throw SetSpecError(spec, "expected '<form>:<args>'");
    const std::string form = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);

    if (form == "list") {
        FpSet A = FpSet::mod_p(field);
        for (const std::string& tok : split(args, ',')) {
            int64_t v = parse_int(tok);
            if (v < 0 || v >= int64_t(p)) throw SetSpecError(tok, "residue outside [0, p-1]");
            A.insert(v);
        }
        return A;
    }
    if (form == "interval") {
        const size_t dots = args.find("..");
        if (dots == std::string::npos) throw SetSpecError(args, "expected 'a..b'");
        int64_t a = parse_int(args.substr(0, dots));
        int64_t b = parse_int(args.substr(dots + 2));
        if (a < 0 || b >= int64_t(p) || a > b)
            throw SetSpecError(args, "need 0 <= a <= b <= p-1");
        FpSet A = FpSet::mod_p(field);
        for (int64_t v = a; v <= b; ++v) A.insert(v);
        return A;
    }
    if (form == "geom") {
        auto parts = split(args, ',');
        if (parts.size() != 2) throw SetSpecError(args, "expected 'g,k'");
        int64_t g = parse_int(parts[0]);
        int64_t k = parse_int(parts[1]);
        if (g <= 0 || g >= int64_t(p)) throw SetSpecError(parts[0], "ratio outside [1, p-1]");
        if (k < 1) throw SetSpecError(parts[1], "length must be at least 1");
        FpSet A = FpSet::mod_p(field);
        uint32_t x = 1;
        for (int64_t i = 0; i < k; ++i) {
            A.insert(x);
            x = field->mul(x, uint32_t(g));
        }
        return A;
    }
    if (form == "subgroup") {
        int64_t d = parse_int(args);
        if (d < 1 || (int64_t(p) - 1) % d != 0)
            throw SetSpecError(args, "order must divide p-1 = " + std::to_string(p - 1));
        return FpSet::from_subgroup(field, field->subgroup_of_order(uint32_t(d)));
    }
    if (form == "random") {
        auto parts = split(args, ',');
        if (parts.size() != 2) throw SetSpecError(args, "expected 'rho,seed'");
        double rho = parse_real(parts[0]);
        if (!(rho > 0.0) || rho > 1.0) throw SetSpecError(parts[0], "density outside (0, 1]");
        int64_t seed = parse_int(parts[1]);
        FpSet A = FpSet::mod_p(field);
        for (uint32_t x = 1; x < p; ++x)
            if (bernoulli_element(uint64_t(seed), 0, x, rho)) A.insert(x);
        return A;
    }
    throw SetSpecError(form, "unknown form (list | interval | geom | subgroup | random)");
}

}  // namespace fpe
