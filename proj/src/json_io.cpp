#include "reglab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

MatQ matrix_from_json(const json& j, int rows, int cols) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    MatQ m(rows, cols);
    if ((int)j.size() != rows) throw ParseError("matrix row count mismatch");
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if ((int)row.size() != cols) throw ParseError("matrix column count mismatch");
        for (int c = 0; c < cols; ++c) {
            const json& e = row[c];
            if (e.is_number_integer())
                m.at(i, c) = rat(e.get<long>());
            else
                m.at(i, c) = rat_from_string(e.get<std::string>());
        }
    }
    return m;
}

json matrix_to_json(const MatQ& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < m.cols; ++j2) row.push_back(m.at(i, j2).get_str());
        rows.push_back(row);
    }
    return rows;
}

CochainComplex complex_from_json(const json& j) {
    CochainComplex c;
    auto deg = j.at("degrees");
    c.lo = deg.at(0).get<int>();
    int hi = deg.at(1).get<int>();
    if (hi < c.lo) throw ParseError("degree range reversed");
    c.dims.assign(hi - c.lo + 1, 0);
    for (auto& [key, val] : j.at("dims").items()) {
        int k = std::stoi(key);
        if (k < c.lo || k > hi) throw ParseError("dims key out of degree range: " + key);
        c.dims[k - c.lo] = val.get<int>();
    }
    c.d.assign(c.dims.size(), MatQ());
    if (j.contains("d")) {
        for (auto& [key, val] : j.at("d").items()) {
            int k = std::stoi(key);
            if (k < c.lo || k > hi) throw ParseError("d key out of degree range: " + key);
            c.d[k - c.lo] = matrix_from_json(val, c.dim(k + 1), c.dim(k));
        }
    }
    c.validate();
    return c;
}

json complex_to_json(const CochainComplex& c) {
    json j;
    j["degrees"] = {c.lo, c.hi()};
    json dims = json::object();
    json d = json::object();
    for (int k = c.lo; k <= c.hi(); ++k) {
        dims[std::to_string(k)] = c.dim(k);
        if (k < c.hi() && c.dim(k) > 0 && c.dim(k + 1) > 0)
            d[std::to_string(k)] = matrix_to_json(c.d_at(k));
    }
    j["dims"] = dims;
    j["d"] = d;
    return j;
}

FilteredCochainComplex filtered_from_json(const json& j) {
    FilteredCochainComplex f;
    f.base = complex_from_json(j);
    const json& filt = j.at("filtration");
    auto lv = filt.at("levels");
    f.min_level = lv.at(0).get<int>();
    f.max_level = lv.at(1).get<int>();
    f.filt.assign(f.max_level - f.min_level + 1, {});
    for (int l = f.min_level; l <= f.max_level; ++l)
        for (int k = f.base.lo; k <= f.base.hi(); ++k)
            f.filt[l - f.min_level].push_back(MatQ(f.base.dim(k), 0));
    for (auto& [lkey, per_deg] : filt.at("F").items()) {
        int l = std::stoi(lkey);
        if (l < f.min_level || l > f.max_level) throw ParseError("filtration level out of range");
        for (auto& [kkey, mat] : per_deg.items()) {
            int k = std::stoi(kkey);
            int n = f.base.dim(k);
            int cols = mat.empty() ? 0 : (int)mat[0].size();
            f.filt[l - f.min_level][k - f.base.lo] = matrix_from_json(mat, n, cols);
        }
    }
    // levels at or below min are implicitly full
    for (int k = f.base.lo; k <= f.base.hi(); ++k)
        if (f.filt[0][k - f.base.lo].cols == 0 && f.base.dim(k) > 0)
            f.filt[0][k - f.base.lo] = MatQ::identity(f.base.dim(k));
    f.validate();
    return f;
}

static std::pair<int, int> parse_bidegree_key(const std::string& key) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw ParseError("bidegree key must be 'a,b': " + key);
    return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
}

DoubleComplex double_complex_from_json(const json& j) {
    DoubleComplex dc;
    auto bd = j.at("bidegrees");
    dc.alo = bd.at(0).at(0).get<int>();
    int ahi = bd.at(0).at(1).get<int>();
    dc.blo = bd.at(1).at(0).get<int>();
    int bhi = bd.at(1).at(1).get<int>();
    dc.na = ahi - dc.alo + 1;
    dc.nb = bhi - dc.blo + 1;
    dc.resize_grid();
    for (auto& [key, val] : j.at("dims").items()) {
        auto [a, b] = parse_bidegree_key(key);
        dc.set_dim(a, b, val.get<int>());
    }
    if (j.contains("horizontal"))
        for (auto& [key, val] : j.at("horizontal").items()) {
            auto [a, b] = parse_bidegree_key(key);
            dc.set_h(a, b, matrix_from_json(val, dc.dim(a + 1, b), dc.dim(a, b)));
        }
    if (j.contains("vertical"))
        for (auto& [key, val] : j.at("vertical").items()) {
            auto [a, b] = parse_bidegree_key(key);
            dc.set_v(a, b, matrix_from_json(val, dc.dim(a, b + 1), dc.dim(a, b)));
        }
    dc.validate();
    return dc;
}

json page_to_json(const SpectralSequencePage& page) {
    json j;
    j["r"] = page.r;
    json entries = json::array();
    for (auto& [pq, e] : page.entries) {
        json ent;
        ent["p"] = pq.first;
        ent["q"] = pq.second;
        ent["dim"] = e.dim;
        if (e.dim > 0) ent["reps"] = matrix_to_json(e.reps);
        MatQ d = page.d_at(pq.first, pq.second);
        if (!d.is_zero()) ent["d_r"] = matrix_to_json(d);
        entries.push_back(ent);
    }
    j["entries"] = entries;
    return j;
}

std::string page_to_text_grid(const SpectralSequencePage& page) {
    int plo = 1 << 30, phi = -(1 << 30), qlo = 1 << 30, qhi = -(1 << 30);
    for (auto& [pq, e] : page.entries) {
        plo = std::min(plo, pq.first);
        phi = std::max(phi, pq.first);
        qlo = std::min(qlo, pq.second);
        qhi = std::max(qhi, pq.second);
    }
    std::ostringstream os;
    os << "E_" << page.r << " page (rows q desc, cols p asc)\n";
    if (page.entries.empty()) return os.str() + "  (empty)\n";
    os << "      ";
    for (int p = plo; p <= phi; ++p) {
        std::string h = "p=" + std::to_string(p);
        os << h;
        os << std::string(h.size() < 6 ? 6 - h.size() : 1, ' ');
    }
    os << "\n";
    for (int q = qhi; q >= qlo; --q) {
        std::string rq = "q=" + std::to_string(q);
        os << rq << std::string(rq.size() < 6 ? 6 - rq.size() : 1, ' ');
        for (int p = plo; p <= phi; ++p) {
            std::string cell = std::to_string(page.dim(p, q));
            os << cell << std::string(cell.size() < 6 ? 6 - cell.size() : 1, ' ');
        }
        os << "\n";
    }
    return os.str();
}

ParsedComplexFile parse_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    ParsedComplexFile out;
    if (j.contains("bidegrees")) {
        out.kind = ParsedComplexFile::Double;
        out.dbl = double_complex_from_json(j);
    } else if (j.contains("filtration")) {
        out.kind = ParsedComplexFile::Filtered;
        out.filtered = filtered_from_json(j);
    } else {
        out.kind = ParsedComplexFile::Plain;
        out.plain = complex_from_json(j);
    }
    return out;
}

}  // namespace reglab
