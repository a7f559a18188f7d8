#ifndef REGLAB_JSON_IO_HPP
#define REGLAB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "reglab/double_complex.hpp"
#include "reglab/spectral.hpp"

namespace reglab {

using json = nlohmann::json;

// {"degrees":[lo,hi], "dims":{"k":n,...}, "d":{"k":[["a/b",...],...]}}
CochainComplex complex_from_json(const json& j);
json complex_to_json(const CochainComplex& c);

// adds "filtration": {"levels":[lo,hi], "F":{"level":{"degree":[[...]]}}}
FilteredCochainComplex filtered_from_json(const json& j);

// {"bidegrees":[[alo,ahi],[blo,bhi]], "dims":{"a,b":n},
//  "horizontal":{"a,b":[[...]]}, "vertical":{"a,b":[[...]]}}
DoubleComplex double_complex_from_json(const json& j);

MatQ matrix_from_json(const json& j, int rows, int cols);
json matrix_to_json(const MatQ& m);

json page_to_json(const SpectralSequencePage& page);
std::string page_to_text_grid(const SpectralSequencePage& page);

// whichever of the three shapes the document carries
struct ParsedComplexFile {
    enum Kind { Plain, Filtered, Double } kind;
    CochainComplex plain;
    FilteredCochainComplex filtered;
    DoubleComplex dbl;
};
ParsedComplexFile parse_complex_file(const std::string& path);

}  // namespace reglab

#endif
