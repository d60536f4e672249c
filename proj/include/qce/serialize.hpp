#ifndef QCE_SERIALIZE_HPP
#define QCE_SERIALIZE_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qce/zoo.hpp"

namespace qce {

using Json = nlohmann::json;

// Matrices serialize as {rows, cols, entries: [[re, im], ...]} row-major;
// doubles survive a round trip exactly (shortest-round-trip printing).
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Self-describing channel format: {kind, parameters...} for the named
// constructions, or {kind: "kraus", din, dout, kraus: [...]} for an
// explicit Kraus set.
Json channel_to_json(const KrausChannel& phi);
Json channel_to_json(const PhaseDampingSpec& spec);
Json channel_to_json(const WeylSpec& spec);
Json channel_to_json(const RestrictedWeylSpec& spec);
Json channel_to_json(const QcSpec& spec);
Json channel_to_json(const ErasureSpec& spec);
Json channel_to_json(const DepolarizingSpec& spec);

// Rebuilds any channel serialized by the functions above.
KrausChannel channel_from_json(const Json& j);

// FNV-1a over a canonical dump; used for input digests in reports.
std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_hex(const Json& j);

}  // namespace qce

#endif
