#include "reglab/membrane.hpp"

#include <sstream>

#include "reglab/cycle_dsl.hpp"
#include "reglab/errors.hpp"

namespace reglab {

Membrane Membrane::segment(Complex a, Complex b) { return polyline({a, b}); }

Membrane Membrane::polyline(std::vector<Complex> pts) {
    Membrane m;
    m.dim = 1;
    m.path = std::move(pts);
    return m;
}

Membrane Membrane::square() {
    Membrane m;
    m.dim = 2;
    m.region = Region2D::UnitSquare;
    return m;
}

Membrane Membrane::delta2() {
    Membrane m;
    m.dim = 2;
    m.region = Region2D::Delta2;
    return m;
}

Membrane Membrane::reversed() const {
    Membrane m = *this;
    if (dim == 1) {
        m.path.assign(path.rbegin(), path.rend());
    } else {
        m.orientation = -orientation;
    }
    return m;
}

Membrane Membrane::from_text(const std::string& text) {
    Membrane m;
    bool have_any = false, reverse = false;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "path") {
            std::string rest;
            std::getline(ls, rest);
            std::vector<Complex> pts;
            size_t pos = 0;
            while (pos <= rest.size()) {
                size_t arrow = rest.find("->", pos);
                std::string piece = rest.substr(
                    pos, arrow == std::string::npos ? std::string::npos : arrow - pos);
                RF v = parse_rf_expression(piece, {});
                PValue pv = rf_value_at0(v);
                if (pv.b.is_zero())
                    throw ParseError("membrane endpoint is infinite (line " +
                                     std::to_string(line_no) + ")");
                pts.push_back(pv.eval_complex());
                if (arrow == std::string::npos) break;
                pos = arrow + 2;
            }
            if (pts.size() < 2)
                throw ParseError("path needs at least two endpoints (line " +
                                 std::to_string(line_no) + ")");
            m.dim = 1;
            m.path = pts;
            have_any = true;
        } else if (word == "region") {
            std::string which;
            ls >> which;
            if (which == "delta2")
                m = Membrane::delta2();
            else if (which == "square")
                m = Membrane::square();
            else
                throw ParseError("unknown region '" + which + "' (line " +
                                 std::to_string(line_no) + ")");
            have_any = true;
        } else if (word == "reversed") {
            reverse = true;
        } else {
            throw ParseError("unknown membrane directive '" + word + "' (line " +
                             std::to_string(line_no) + ")");
        }
    }
    if (!have_any) throw ParseError("membrane text declares no path or region");
    return reverse ? m.reversed() : m;
}

}  // namespace reglab
