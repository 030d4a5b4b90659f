#pragma once

#include <stdexcept>
#include <string>

#include "fpe/sets.hpp"

namespace fpe {

/// Structured parse failure; `token` names the offending piece.
class SetSpecError : public std::invalid_argument {
public:
    SetSpecError(const std::string& token, const std::string& why)
        : std::invalid_argument("set spec: bad token '" + token + "': " + why), token_(token) {}
    const std::string& token() const { return token_; }

private:
    std::string token_;
};

/// Mini-language for mod-p sets:
///   list:v1,v2,...   explicit residues in [0, p-1]
///   interval:a..b    the residues a..b
///   geom:g,k         {g^0, ..., g^(k-1)} mod p
///   subgroup:d       the subgroup of order d (d must divide p-1)
///   random:rho,seed  Bernoulli(rho) subset of F_p^*, deterministic in seed
FpSet parse_set_spec(const std::string& spec, FieldPtr field);

}  // namespace fpe
