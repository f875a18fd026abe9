#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairclust/core.hpp"

namespace fairclust {

struct IngestResult {
    PointSet points;
    // One group per distinct value per group column, named "column=value".
    // Groups from different columns may overlap; within one column they
    // partition the accepted rows.
    std::vector<Group> groups;
    std::size_t rows_rejected = 0;
};

// Reads a comma-separated file with a header row. Feature cells must parse
// as numbers; a row with a bad cell (or the wrong field count) is dropped
// and counted, it does not abort the run. A header missing a requested
// column does abort.
IngestResult ingest_csv(std::istream& in,
                        const std::vector<std::string>& feature_cols,
                        const std::vector<std::string>& group_cols);
IngestResult ingest_csv_file(const std::string& path,
                             const std::vector<std::string>& feature_cols,
                             const std::vector<std::string>& group_cols);

// Per-dimension shift to mean 0 and scale to variance 1 (population
// variance). Dimensions with zero variance collapse to all-zeros.
PointSet normalize(const PointSet& ps);

struct SubsampleResult {
    PointSet points;
    std::vector<Group> groups;  // remapped to the new contiguous ids
    std::vector<int> kept;      // original ids, ascending; new id = position
};

// Uniform sample of `size` points without replacement. Kept ids are sorted,
// so size = n is the identity and relative order is preserved.
SubsampleResult subsample(const PointSet& ps, const std::vector<Group>& groups,
                          std::size_t size, std::uint64_t seed);

// Matrix dump: header "point,<center id>,...", one row per point with the
// masses printed to 17 significant digits so the round-trip is exact.
void write_soft_csv(std::ostream& os, const SoftClustering& sc);
SoftClustering read_soft_csv(std::istream& is);
void write_soft_csv_file(const std::string& path, const SoftClustering& sc);
SoftClustering read_soft_csv_file(const std::string& path);

// One constraint per line: "j1 j2 bound". Blank lines and lines starting
// with '#' are skipped.
FairnessConstraintSet read_fairness_file(std::istream& is);
FairnessConstraintSet read_fairness_file(const std::string& path);

}  // namespace fairclust
