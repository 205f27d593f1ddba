#pragma once

namespace hellmann {

inline constexpr const char* artifact_version = "1.0.0";

/// Version of the embedded bound-state reference dataset (data/table1_reference.json).
inline constexpr const char* reference_dataset_version = "1";

} // namespace hellmann
