#include "faircf/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "faircf/errors.hpp"

namespace faircf {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& raw, std::size_t row, const std::string& column) {
    const std::string s = trim(raw);
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || s.empty()) {
        throw NonNumericCell("non-numeric cell '" + raw + "' at row " +
                             std::to_string(row) + ", column '" + column + "'");
    }
    if (!std::isfinite(value)) {
        throw NonNumericCell("non-finite cell at row " + std::to_string(row) +
                             ", column '" + column + "'");
    }
    return value;
}

int parse_binary(const std::string& raw, std::size_t row, const std::string& column) {
    const double v = parse_cell(raw, row, column);
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    throw NonBinaryLabel("column '" + column + "' must be 0/1, found '" + trim(raw) +
                         "' at row " + std::to_string(row));
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& group_column) {
    std::ifstream in(path);
    if (!in) throw FaircfError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw EmptyDataset("'" + path + "' is empty");
    const auto header = split_line(line);

    std::size_t label_idx = header.size(), group_idx = header.size();
    std::vector<std::size_t> feature_idx;
    std::vector<std::string> feature_names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        const std::string name = trim(header[j]);
        if (name == label_column) {
            label_idx = j;
        } else if (name == group_column) {
            group_idx = j;
        } else {
            feature_idx.push_back(j);
            feature_names.push_back(name);
        }
    }
    if (label_idx == header.size())
        throw MissingColumn("label column '" + label_column + "' not in header");
    if (group_idx == header.size())
        throw MissingColumn("group column '" + group_column + "' not in header");

    Dataset data;
    data.feature_names = feature_names;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw NonNumericCell("row " + std::to_string(row) + " has " +
                                 std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(header.size()));
        }
        FeatureVector x;
        x.reserve(feature_idx.size());
        for (std::size_t k = 0; k < feature_idx.size(); ++k)
            x.push_back(parse_cell(cells[feature_idx[k]], row, feature_names[k]));
        data.features.push_back(std::move(x));
        data.labels.push_back(parse_binary(cells[label_idx], row, label_column));
        data.groups.push_back(parse_binary(cells[group_idx], row, group_column));
        data.row_ids.push_back(row);
        ++row;
    }
    if (data.size() == 0) throw EmptyDataset("'" + path + "' has no data rows");
    return data;
}

void save_csv(const Dataset& data, const std::string& path,
              const std::string& label_column, const std::string& group_column) {
    std::ofstream out(path);
    if (!out) throw FaircfError("cannot write '" + path + "'");
    for (const auto& name : data.feature_names) out << name << ',';
    out << label_column << ',' << group_column << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.features[i]) out << format_full(v) << ',';
        out << data.labels[i] << ',' << data.groups[i] << '\n';
    }
}

Standardizer fit_standardizer(const Dataset& train) {
    if (train.size() == 0) throw EmptyDataset("standardizer needs a nonempty split");
    const std::size_t d = train.dim();
    const double n = static_cast<double>(train.size());

    Standardizer st;
    st.mean.assign(d, 0.0);
    st.std_dev.assign(d, 0.0);
    for (const auto& x : train.features)
        for (std::size_t j = 0; j < d; ++j) st.mean[j] += x[j];
    for (std::size_t j = 0; j < d; ++j) st.mean[j] /= n;

    for (const auto& x : train.features)
        for (std::size_t j = 0; j < d; ++j) {
            const double dev = x[j] - st.mean[j];
            st.std_dev[j] += dev * dev;
        }
    for (std::size_t j = 0; j < d; ++j) {
        st.std_dev[j] = std::sqrt(st.std_dev[j] / n);
        if (st.std_dev[j] <= 0.0) st.std_dev[j] = 1.0;  // zero-variance rule
    }
    return st;
}

FeatureVector standardize_row(const Standardizer& st, const FeatureVector& row) {
    if (row.size() != st.dim())
        throw DimensionMismatch("standardizer dimension " + std::to_string(st.dim()) +
                                " vs row dimension " + std::to_string(row.size()));
    FeatureVector out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = (row[j] - st.mean[j]) / st.std_dev[j];
    return out;
}

FeatureVector unstandardize_row(const Standardizer& st, const FeatureVector& row) {
    if (row.size() != st.dim())
        throw DimensionMismatch("standardizer dimension " + std::to_string(st.dim()) +
                                " vs row dimension " + std::to_string(row.size()));
    FeatureVector out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = row[j] * st.std_dev[j] + st.mean[j];
    return out;
}

Dataset apply_standardizer(const Standardizer& st, const Dataset& data) {
    Dataset out = data;
    for (auto& x : out.features) x = standardize_row(st, x);
    return out;
}

std::vector<FoldIndices> kfold_split(const Dataset& data, std::size_t k,
                                     std::uint64_t seed) {
    if (k < 2) throw ConfigError("k-fold split needs k >= 2");
    if (data.size() < k)
        throw TooFewSamples(std::to_string(data.size()) + " samples for " +
                            std::to_string(k) + " folds");

    // Strata by (label, group); a running fold cursor across strata keeps the
    // global fold sizes within one of each other.
    std::array<std::vector<std::size_t>, 4> strata;
    for (std::size_t i = 0; i < data.size(); ++i)
        strata[static_cast<std::size_t>(data.labels[i] * 2 + data.groups[i])].push_back(i);

    Rng rng(seed);
    std::vector<std::vector<std::size_t>> fold_members(k);
    std::size_t cursor = 0;
    for (auto& stratum : strata) {
        for (std::size_t i = stratum.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(stratum[i - 1], stratum[j]);
        }
        for (std::size_t idx : stratum) fold_members[cursor++ % k].push_back(idx);
    }

    std::vector<FoldIndices> folds(k);
    for (std::size_t f = 0; f < k; ++f) {
        auto test = fold_members[f];
        std::sort(test.begin(), test.end());
        std::vector<std::size_t> train;
        train.reserve(data.size() - test.size());
        for (std::size_t g = 0; g < k; ++g) {
            if (g == f) continue;
            train.insert(train.end(), fold_members[g].begin(), fold_members[g].end());
        }
        std::sort(train.begin(), train.end());
        folds[f] = FoldIndices{std::move(train), std::move(test)};
    }
    return folds;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_per_cell < 2) throw ConfigError("need at least 2 samples per cell");
    if (spec.dim < 1) throw ConfigError("dimension must be positive");
    if (spec.separation <= 0.0) throw ConfigError("separation must be positive");
    if (spec.disparity < 0.0) throw ConfigError("disparity must be nonnegative");

    Rng rng(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    Dataset data;
    data.feature_names.reserve(spec.dim);
    for (std::size_t j = 0; j < spec.dim; ++j)
        data.feature_names.push_back("f" + std::to_string(j + 1));

    std::size_t row = 0;
    for (int group = 0; group <= 1; ++group) {
        for (int cls = 0; cls <= 1; ++cls) {
            double center = (cls == 1) ? spec.separation / 2.0 : -spec.separation / 2.0;
            if (cls == 0 && group == 0) center -= spec.disparity;
            for (std::size_t i = 0; i < spec.n_per_cell; ++i) {
                FeatureVector x(spec.dim);
                for (std::size_t j = 0; j < spec.dim; ++j) x[j] = noise(rng);
                x[0] += center;
                data.features.push_back(std::move(x));
                data.labels.push_back(cls);
                data.groups.push_back(group);
                data.row_ids.push_back(row++);
            }
        }
    }
    return data;
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.feature_names = data.feature_names;
    out.features.reserve(indices.size());
    for (std::size_t i : indices) {
        out.features.push_back(data.features.at(i));
        out.labels.push_back(data.labels.at(i));
        out.groups.push_back(data.groups.at(i));
        out.row_ids.push_back(data.row_ids.at(i));
    }
    return out;
}

std::pair<Dataset, Dataset> split_by_group(const Dataset& data) {
    std::vector<std::size_t> g0, g1;
    for (std::size_t i = 0; i < data.size(); ++i)
        (data.groups[i] == 0 ? g0 : g1).push_back(i);
    return {subset(data, g0), subset(data, g1)};
}

}  // namespace faircf
