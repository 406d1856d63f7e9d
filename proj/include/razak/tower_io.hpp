#pragma once

// Tower serialization as one JSON document:
//   {seed: {n, a}, depth, grid_size, stages: [{n, a}],
//    steps: [{branches: [{l, d, constant}], dim, unitary_path: [base64, ...]}]}
// Each unitary_path entry is one grid sample: dim×dim complex entries, row
// major, each entry two little-endian float64 values (re, im).

#include <string>

#include "razak/tower.hpp"

namespace razak {

std::string tower_to_json(const Tower& tower);

/// Throws FormatError for malformed documents. A stored path that matches the
/// canonical permutation path bit for bit is replaced by that closed form;
/// otherwise the stored samples are used as given.
Tower tower_from_json(const std::string& text);

std::string encode_matrix(const CMatrix& m);
CMatrix decode_matrix(const std::string& text, std::size_t dim);

}  // namespace razak
