#include "fairclust/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fairclust/rng.hpp"

namespace fairclust {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == s.size() && std::isfinite(out);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    return f;
}

}  // namespace

IngestResult ingest_csv(std::istream& in,
                        const std::vector<std::string>& feature_cols,
                        const std::vector<std::string>& group_cols) {
    if (feature_cols.empty())
        throw std::invalid_argument("need at least one feature column");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty input, no header row");
    const std::vector<std::string> header = split_csv(line);

    auto index_of = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw std::runtime_error("column not in header: " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    std::vector<std::size_t> fidx, gidx;
    for (const auto& c : feature_cols) fidx.push_back(index_of(c));
    for (const auto& c : group_cols) gidx.push_back(index_of(c));

    std::vector<std::vector<double>> rows;
    // column -> value -> members, ordered so group ids are reproducible
    std::vector<std::map<std::string, std::vector<int>>> values(gidx.size());
    std::size_t rejected = 0;

    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != header.size()) {
            ++rejected;
            continue;
        }
        std::vector<double> feat(fidx.size());
        bool ok = true;
        for (std::size_t d = 0; d < fidx.size(); ++d)
            if (!parse_number(cells[fidx[d]], feat[d])) {
                ok = false;
                break;
            }
        if (!ok) {
            ++rejected;
            continue;
        }
        const int id = static_cast<int>(rows.size());
        rows.push_back(std::move(feat));
        for (std::size_t g = 0; g < gidx.size(); ++g)
            values[g][cells[gidx[g]]].push_back(id);
    }

    IngestResult res;
    res.points = PointSet(std::move(rows));
    res.rows_rejected = rejected;
    for (std::size_t g = 0; g < gidx.size(); ++g)
        for (auto& [value, members] : values[g])
            res.groups.push_back(
                Group{group_cols[g] + "=" + value, std::move(members)});
    return res;
}

IngestResult ingest_csv_file(const std::string& path,
                             const std::vector<std::string>& feature_cols,
                             const std::vector<std::string>& group_cols) {
    std::ifstream f = open_or_throw(path);
    return ingest_csv(f, feature_cols, group_cols);
}

PointSet normalize(const PointSet& ps) {
    const std::size_t n = ps.size();
    if (n < 2) throw std::invalid_argument("normalize needs at least 2 points");
    const std::size_t dim = ps.dim();
    std::vector<double> mean(dim, 0.0), var(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d) mean[d] += ps[i][d];
    for (std::size_t d = 0; d < dim; ++d) mean[d] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d) {
            const double c = ps[i][d] - mean[d];
            var[d] += c * c;
        }
    for (std::size_t d = 0; d < dim; ++d) var[d] /= static_cast<double>(n);

    std::vector<std::vector<double>> out(n, std::vector<double>(dim, 0.0));
    for (std::size_t d = 0; d < dim; ++d) {
        if (var[d] <= 1e-24) continue;  // constant dimension -> zeros
        const double inv_sd = 1.0 / std::sqrt(var[d]);
        for (std::size_t i = 0; i < n; ++i)
            out[i][d] = (ps[i][d] - mean[d]) * inv_sd;
    }
    return PointSet(std::move(out));
}

SubsampleResult subsample(const PointSet& ps, const std::vector<Group>& groups,
                          std::size_t size, std::uint64_t seed) {
    const std::size_t n = ps.size();
    if (size > n) throw std::invalid_argument("subsample size exceeds n");
    Rng rng(seed);
    std::vector<int> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + rng.index(n - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> kept(pool.begin(), pool.begin() + static_cast<long>(size));
    std::sort(kept.begin(), kept.end());

    std::vector<int> new_id(n, -1);
    for (std::size_t i = 0; i < kept.size(); ++i)
        new_id[static_cast<std::size_t>(kept[i])] = static_cast<int>(i);

    SubsampleResult res;
    std::vector<std::vector<double>> rows;
    rows.reserve(size);
    for (int old : kept) rows.push_back(ps[static_cast<std::size_t>(old)]);
    res.points = PointSet(std::move(rows));
    res.kept = std::move(kept);
    for (const Group& g : groups) {
        Group ng{g.name, {}};
        for (int m : g.members)
            if (new_id[static_cast<std::size_t>(m)] >= 0)
                ng.members.push_back(new_id[static_cast<std::size_t>(m)]);
        res.groups.push_back(std::move(ng));
    }
    return res;
}

void write_soft_csv(std::ostream& os, const SoftClustering& sc) {
    os << "point";
    for (int c : sc.centers) os << "," << c;
    os << "\n";
    char buf[64];
    for (std::size_t j = 0; j < sc.mu.size(); ++j) {
        os << j;
        for (double v : sc.mu[j]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << "," << buf;
        }
        os << "\n";
    }
}

SoftClustering read_soft_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("empty soft clustering file");
    const std::vector<std::string> header = split_csv(line);
    if (header.empty() || header[0] != "point")
        throw std::runtime_error("soft clustering header must start with 'point'");
    SoftClustering sc;
    for (std::size_t c = 1; c < header.size(); ++c) {
        double v = 0.0;
        if (!parse_number(header[c], v))
            throw std::runtime_error("bad center id in header: " + header[c]);
        sc.centers.push_back(static_cast<int>(v));
    }
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != header.size())
            throw std::runtime_error("soft clustering row has wrong arity");
        double id = 0.0;
        if (!parse_number(cells[0], id) ||
            static_cast<std::size_t>(id) != sc.mu.size())
            throw std::runtime_error("soft clustering point ids must be 0..n-1");
        std::vector<double> row(sc.centers.size());
        for (std::size_t c = 0; c < row.size(); ++c)
            if (!parse_number(cells[c + 1], row[c]))
                throw std::runtime_error("bad mass value: " + cells[c + 1]);
        sc.mu.push_back(std::move(row));
    }
    validate_soft(sc);
    return sc;
}

void write_soft_csv_file(const std::string& path, const SoftClustering& sc) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    write_soft_csv(f, sc);
}

SoftClustering read_soft_csv_file(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    return read_soft_csv(f);
}

FairnessConstraintSet read_fairness_file(std::istream& is) {
    FairnessConstraintSet fc;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ss(t);
        int j1 = 0, j2 = 0;
        double bound = 0.0;
        if (!(ss >> j1 >> j2 >> bound))
            throw std::runtime_error("bad fairness line " +
                                     std::to_string(lineno) + ": " + t);
        std::string rest;
        if (ss >> rest)
            throw std::runtime_error("trailing junk on fairness line " +
                                     std::to_string(lineno));
        if (j1 == j2)
            throw std::runtime_error("fairness pair with equal ids on line " +
                                     std::to_string(lineno));
        if (bound < 0.0)
            throw std::runtime_error("negative fairness bound on line " +
                                     std::to_string(lineno));
        fc.add(j1, j2, bound);
    }
    return fc;
}

FairnessConstraintSet read_fairness_file(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    return read_fairness_file(f);
}

}  // namespace fairclust
