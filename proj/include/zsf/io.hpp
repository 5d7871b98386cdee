#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "zsf/sequence.hpp"

namespace zsf {

/// Presented kinds serialize as {"kind": "dihedral", "n": 5}; everything
/// else as {"order", "identity", "names", "table"} with a row-major table.
nlohmann::json group_to_json(const FiniteGroup& g);
/// Accepts either form; validation failures raise ValidationError.
FiniteGroup group_from_json(const nlohmann::json& j);

/// Whitespace-separated terms. A term is a name, or a parenthesized name
/// when it contains spaces, optionally followed by "^[k]". A trailing "^k"
/// is read as a multiplicity only when the whole token is not itself an
/// element name, so "a^2" over a dihedral group is one term and "t^2" is two.
Sequence parse_sequence(const GroupPtr& g, std::string_view text);

/// {"group": <group json>, "terms": ["a^[4]", "t^[2]", ...]}
nlohmann::json sequence_to_json(const Sequence& s);
/// Reads "terms" with the single-term grammar above. When `group` is null the
/// embedded "group" object is used.
Sequence sequence_from_json(const nlohmann::json& j, GroupPtr group = nullptr);

}  // namespace zsf
