#pragma once

namespace meander {

inline constexpr const char* kCodeVersion = "0.1.0";

// Identifies the deterministic enumeration order of chord diagrams; cache
// entries are keyed on it so a reordering invalidates old payloads.
inline constexpr const char* kEnumOrderId = "dyck-lex-v1";

}  // namespace meander
