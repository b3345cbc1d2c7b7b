#pragma once

#include <string>

#include "frameforge/seqmodel.hpp"

namespace frameforge {

// Text form of a sequence: a JSON object with schema version "v": 1, a
// "field" of "real" or "complex", and either an explicit vector list or a
// structured description (edit script or coefficient rule) over the
// standard basis.  Complex scalars serialize as [re, im]; bare numbers are
// real.  Parsing is strict and reports the JSON path of the first problem.
std::string serialize_sequence(const VectorSequence& s);
VectorSequence parse_sequence(const std::string& text);

// File wrappers (UTF-8).  Reading a missing or unreadable path throws
// InvalidInput.
VectorSequence load_sequence(const std::string& path);
void save_sequence(const VectorSequence& s, const std::string& path);

}  // namespace frameforge
