#include "pathclust/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace pathclust {
namespace {

// One RFC-4180 record. Handles quoted fields with "" escapes; quoted fields
// may contain commas and newlines, so records are read from the stream, not
// line by line.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            fields.push_back(std::move(field));
            return true;
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(static_cast<char>(c));
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& raw, double& out) {
    const std::string s = trimmed(raw);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;  // from_chars rejects a leading plus
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

DataMatrix load_csv(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    // Strip a UTF-8 BOM if present.
    if (in.peek() == 0xEF) {
        char bom[3];
        in.read(bom, 3);
    }

    std::vector<std::string> header;
    std::vector<std::string> fields;
    if (opts.has_header) {
        if (!read_record(in, header)) throw std::runtime_error(path + ": empty file");
    }

    int label_idx = -1;
    if (opts.label_column) {
        if (std::holds_alternative<std::string>(*opts.label_column)) {
            const auto& name = std::get<std::string>(*opts.label_column);
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end())
                throw std::runtime_error(path + ": no column named '" + name + "'" +
                                         (opts.has_header ? "" : " (file loaded without a header)"));
            label_idx = static_cast<int>(it - header.begin());
        } else {
            label_idx = std::get<int>(*opts.label_column);
        }
    }

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::map<std::string, int> label_ids;
    std::size_t ncols = opts.has_header ? header.size() : 0;
    std::size_t lineno = opts.has_header ? 1 : 0;

    while (read_record(in, fields)) {
        ++lineno;
        if (fields.size() == 1 && trimmed(fields[0]).empty()) continue;  // blank line
        if (ncols == 0) {
            ncols = fields.size();
            if (label_idx >= 0 && static_cast<std::size_t>(label_idx) >= ncols)
                throw std::runtime_error(path + ": label column index " +
                                         std::to_string(label_idx) + " out of range (row has " +
                                         std::to_string(ncols) + " fields)");
        }
        if (fields.size() != ncols)
            throw std::runtime_error(path + ": row " + std::to_string(lineno) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(ncols));
        std::vector<double> row;
        row.reserve(ncols - (label_idx >= 0 ? 1 : 0));
        for (std::size_t c = 0; c < ncols; ++c) {
            if (static_cast<int>(c) == label_idx) {
                const std::string key = trimmed(fields[c]);
                auto [it, inserted] = label_ids.try_emplace(key, static_cast<int>(label_ids.size()));
                labels.push_back(it->second);
                continue;
            }
            double v;
            if (!parse_double(fields[c], v))
                throw std::runtime_error(path + ": row " + std::to_string(lineno) + ", column " +
                                         std::to_string(c + 1) + ": cannot parse '" + fields[c] +
                                         "' as a number");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty file");

    DataMatrix out;
    const Index p = static_cast<Index>(rows.size());
    const Index k = static_cast<Index>(rows.front().size());
    out.values.resize(p, k);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < k; ++j) out.values(i, j) = rows[i][j];
    if (label_idx >= 0) out.ground_truth = std::move(labels);
    if (opts.has_header) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (static_cast<int>(c) != label_idx) out.column_names.push_back(trimmed(header[c]));
    }
    return out;
}

namespace {

std::string format_value(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

// Fields containing the delimiter, quotes, or newlines get quoted.
std::string escaped(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

void write_csv(const DataMatrix& data, const std::string& path,
               const std::vector<int>* labels, const std::string& label_header) {
    if (labels && static_cast<Index>(labels->size()) != data.rows())
        throw std::invalid_argument("write_csv: label count does not match row count");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");

    if (!data.column_names.empty()) {
        for (Index j = 0; j < data.cols(); ++j) {
            if (j) out << ',';
            out << escaped(data.column_names[static_cast<std::size_t>(j)]);
        }
        if (labels) out << ',' << escaped(label_header);
        out << '\n';
    }
    for (Index i = 0; i < data.rows(); ++i) {
        for (Index j = 0; j < data.cols(); ++j) {
            if (j) out << ',';
            out << format_value(data.values(i, j));
        }
        if (labels) out << ',' << (*labels)[static_cast<std::size_t>(i)];
        out << '\n';
    }
}

Matrix standardize(const Matrix& values) {
    const Index p = values.rows();
    if (p < 2) throw std::invalid_argument("standardize: need at least 2 rows");
    Matrix out(p, values.cols());
    for (Index j = 0; j < values.cols(); ++j) {
        const double mean = values.col(j).mean();
        const double var = (values.col(j).array() - mean).square().sum() / static_cast<double>(p);
        if (var == 0.0) {
            out.col(j).setZero();
        } else {
            out.col(j) = (values.col(j).array() - mean) / std::sqrt(var);
        }
    }
    return out;
}

DataMatrix standardize(const DataMatrix& data) {
    DataMatrix out = data;
    out.values = standardize(data.values);
    return out;
}

Index lifted_dimension(Index k, int degree, Index max_cols) {
    // C(k+d, d) without overflow: bail out as soon as the cap is exceeded.
    Index count = 1;
    for (int i = 1; i <= degree; ++i) {
        count = count * (k + i) / i;  // exact: product of i consecutive C's
        if (count > max_cols)
            throw std::invalid_argument("polynomial_lift: lifted dimensionality exceeds cap of " +
                                        std::to_string(max_cols) + " columns");
    }
    return count;
}

namespace {

// Exponent vectors of total degree exactly g over k variables, in
// lexicographically decreasing order (first variable takes the highest
// power first).
void enumerate_exponents(Index k, int g, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
    const Index var = static_cast<Index>(current.size());
    if (var == k - 1) {
        current.push_back(g);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int e = g; e >= 0; --e) {
        current.push_back(e);
        enumerate_exponents(k, g - e, current, out);
        current.pop_back();
    }
}

}  // namespace

DataMatrix polynomial_lift(const DataMatrix& data, int degree, Index max_cols) {
    if (degree < 1) throw std::invalid_argument("polynomial_lift: degree must be >= 1");
    const Index k = data.cols();
    const Index lifted = lifted_dimension(k, degree, max_cols);

    std::vector<std::vector<int>> exponents;
    std::vector<int> current;
    for (int g = 0; g <= degree; ++g) enumerate_exponents(k, g, current, exponents);

    DataMatrix out;
    out.ground_truth = data.ground_truth;
    out.values.resize(data.rows(), lifted);
    for (Index i = 0; i < data.rows(); ++i) {
        for (Index j = 0; j < lifted; ++j) {
            double v = 1.0;
            const auto& exps = exponents[static_cast<std::size_t>(j)];
            for (Index a = 0; a < k; ++a)
                for (int e = 0; e < exps[static_cast<std::size_t>(a)]; ++e) v *= data.values(i, a);
            out.values(i, j) = v;
        }
    }

    out.column_names.reserve(static_cast<std::size_t>(lifted));
    for (const auto& exps : exponents) {
        std::string name;
        for (Index a = 0; a < k; ++a) {
            if (exps[static_cast<std::size_t>(a)] == 0) continue;
            if (!name.empty()) name += '*';
            name += data.column_names.empty() ? "x" + std::to_string(a)
                                              : data.column_names[static_cast<std::size_t>(a)];
            if (exps[static_cast<std::size_t>(a)] > 1)
                name += '^' + std::to_string(exps[static_cast<std::size_t>(a)]);
        }
        out.column_names.push_back(name.empty() ? "1" : name);
    }
    return out;
}

}  // namespace pathclust
