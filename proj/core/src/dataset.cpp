#include "slrf/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "slrf/errors.hpp"

namespace slrf {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

double parse_double(const std::string& text, int line_number, const std::string& column) {
    const std::string t = trim(text);
    double value = 0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || t.empty()) {
        std::ostringstream msg;
        msg << "line " << line_number << ": column '" << column << "': cannot parse '" << text
            << "' as a number";
        throw parse_error(msg.str());
    }
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "line " << line_number << ": column '" << column << "': value is not finite";
        throw parse_error(msg.str());
    }
    return value;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

Dataset load_dataset(const std::filesystem::path& path, const FeatureSchema& schema) {
    schema.validate();
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open " + path.string());
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw parse_error("line 1: missing header row in " + path.string());
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    // Strip a UTF-8 byte order mark if one leads the header.
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) {
        line.erase(0, 3);
    }

    const auto header = split_csv_line(line);
    const int p = schema.feature_count();
    std::vector<int> feature_column(static_cast<std::size_t>(p), -1);
    int label_column = -1;
    for (std::size_t col = 0; col < header.size(); ++col) {
        const std::string name = trim(header[col]);
        if (name == schema.label_column) {
            label_column = static_cast<int>(col);
            continue;
        }
        for (int f = 0; f < p; ++f) {
            if (name == schema.feature_names[static_cast<std::size_t>(f)]) {
                feature_column[static_cast<std::size_t>(f)] = static_cast<int>(col);
            }
        }
    }
    for (int f = 0; f < p; ++f) {
        if (feature_column[static_cast<std::size_t>(f)] < 0) {
            throw schema_error("missing feature column '" +
                               schema.feature_names[static_cast<std::size_t>(f)] + "' in " +
                               path.string());
        }
    }
    if (label_column < 0) {
        throw schema_error("missing label column '" + schema.label_column + "' in " +
                           path.string());
    }

    Dataset dataset;
    dataset.schema = schema;
    int line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << "line " << line_number << ": expected " << header.size() << " fields, got "
                << fields.size();
            throw parse_error(msg.str());
        }
        Sample sample;
        sample.features.resize(static_cast<std::size_t>(p));
        for (int f = 0; f < p; ++f) {
            const auto col = static_cast<std::size_t>(feature_column[static_cast<std::size_t>(f)]);
            sample.features[static_cast<std::size_t>(f)] =
                parse_double(fields[col], line_number, schema.feature_names[static_cast<std::size_t>(f)]);
        }
        const std::string label = trim(fields[static_cast<std::size_t>(label_column)]);
        sample.label = schema.class_index(label);
        if (sample.label < 0) {
            std::ostringstream msg;
            msg << "line " << line_number << ": unknown label '" << label << "'";
            throw label_error(msg.str());
        }
        dataset.samples.push_back(std::move(sample));
    }
    return dataset;
}

Partition partition(const Dataset& dataset, const SplitSizes& sizes, Rng& rng) {
    if (sizes.n_initial < 0 || sizes.n_candidate < 0 || sizes.n_test < 0) {
        throw config_error("split sizes must be nonnegative");
    }
    const long long total =
        static_cast<long long>(sizes.n_initial) + sizes.n_candidate + sizes.n_test;
    if (total != dataset.size()) {
        std::ostringstream msg;
        msg << "split sizes " << sizes.n_initial << "+" << sizes.n_candidate << "+" << sizes.n_test
            << " do not sum to the dataset size " << dataset.size();
        throw config_error(msg.str());
    }

    std::vector<int> order(static_cast<std::size_t>(dataset.size()));
    for (int i = 0; i < dataset.size(); ++i) {
        order[static_cast<std::size_t>(i)] = i;
    }
    rng.shuffle(order);

    Partition part;
    auto it = order.begin();
    part.initial.assign(it, it + sizes.n_initial);
    it += sizes.n_initial;
    part.candidate.assign(it, it + sizes.n_candidate);
    it += sizes.n_candidate;
    part.test.assign(it, it + sizes.n_test);
    // Canonical ascending order inside each set; membership alone carries the
    // randomness, and sorted sets make index tie-breaks reproducible.
    std::sort(part.initial.begin(), part.initial.end());
    std::sort(part.candidate.begin(), part.candidate.end());
    std::sort(part.test.begin(), part.test.end());
    return part;
}

FeatureBounds feature_bounds(const std::vector<Sample>& samples) {
    if (samples.empty()) {
        throw domain_error("feature_bounds over an empty sample list");
    }
    const std::size_t p = samples.front().features.size();
    FeatureBounds bounds;
    bounds.min_max.assign(p, {std::numeric_limits<double>::infinity(),
                              -std::numeric_limits<double>::infinity()});
    for (const auto& sample : samples) {
        for (std::size_t j = 0; j < p; ++j) {
            auto& [lo, hi] = bounds.min_max[j];
            lo = std::min(lo, sample.features[j]);
            hi = std::max(hi, sample.features[j]);
        }
    }
    return bounds;
}

FeatureBounds feature_bounds(const Dataset& dataset, const std::vector<int>& indices) {
    std::vector<Sample> selected = gather(dataset, indices);
    return feature_bounds(selected);
}

std::vector<double> normalize(const std::vector<double>& x, const FeatureBounds& bounds) {
    std::vector<double> unit(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto& [lo, hi] = bounds.min_max[j];
        if (lo == hi) {
            unit[j] = 0.5;
        } else {
            unit[j] = std::clamp((x[j] - lo) / (hi - lo), 0.0, 1.0);
        }
    }
    return unit;
}

std::vector<Sample> gather(const Dataset& dataset, const std::vector<int>& indices) {
    std::vector<Sample> out;
    out.reserve(indices.size());
    for (int index : indices) {
        out.push_back(dataset.samples.at(static_cast<std::size_t>(index)));
    }
    return out;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("cannot write " + path.string());
    }
    for (int f = 0; f < dataset.feature_count(); ++f) {
        out << dataset.schema.feature_names[static_cast<std::size_t>(f)] << ',';
    }
    out << dataset.schema.label_column << '\n';
    for (const auto& sample : dataset.samples) {
        for (double v : sample.features) {
            out << format_double(v) << ',';
        }
        out << dataset.schema.class_names[static_cast<std::size_t>(sample.label)] << '\n';
    }
    if (!out) {
        throw io_error("failed while writing " + path.string());
    }
}

} // namespace slrf
