// JSON encodings for move records, equivalence witnesses, profiles, and
// matrix-pair witnesses.
//
// Witness file:  {"moves": [<record>...], "isomorphism": {"<v>": <v>, ...}}
// Record:        {"kind": "in_split"|"out_split"|"in_amalgamation"|
//                 "out_amalgamation", "site": [..], "partition": {"<v>":
//                 [[edge ids]..]}, "block_map": [[..]..], "vertex_map":
//                 {"<v>": [..]}, "edge_map": {"<e>": [..]},
//                 "family_map": {"<e>": [..]}}
// Profile file:  {"p": int, "q": int, "period": int, "counts": [int...]}
// Matrix pair:   {"R": [[..]..], "S": [[..]..], "lag": int} for a single
//                lagged witness, or {"chain": [{"R":..,"S":..}...]} for an
//                elementary chain.
#pragma once

#include <string>
#include <vector>

#include "meteor/matrix_dynamics.hpp"
#include "meteor/meteor.hpp"
#include "meteor/moves.hpp"

namespace meteor {

std::string witness_to_json(const Witness& w);

/// Parses a witness file; throws parse_error on malformed input.
Witness parse_witness_json(const std::string& text);

std::string profile_to_json(const MeteorProfile& p);

MeteorProfile parse_profile_json(const std::string& text);

std::string se_witness_to_json(const SeWitness& w);

SeWitness parse_se_witness_json(const std::string& text);

std::string sse_chain_to_json(const std::vector<SsePair>& chain);

std::vector<SsePair> parse_sse_chain_json(const std::string& text);

}  // namespace meteor
