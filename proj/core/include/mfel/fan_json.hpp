#pragma once

#include <optional>
#include <string>

#include "mfel/birational.hpp"
#include "mfel/multifan.hpp"

namespace mfel {

/// Contents of a fan file: the fan, its edge-vector multiplicities and an
/// optional divisor. Vertex indices are 1-based on disk and 0-based in
/// memory.
struct FanFile {
  MultiFan fan;
  EdgeVectorSet v;
  std::optional<Divisor> divisor;
};

/// Parses the JSON fan format. Throws SchemaError with the offending field.
FanFile read_fan_json(const std::string& text);
FanFile read_fan_file(const std::string& path);

/// Canonical serialization; read-then-write is idempotent.
std::string write_fan_json(const MultiFan& fan, const EdgeVectorSet& v,
                           const Divisor* divisor = nullptr);

std::string write_morphism_json(const BirationalMorphism& m);

}  // namespace mfel
