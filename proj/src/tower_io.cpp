#include "razak/tower_io.hpp"

#include <bit>
#include <cstring>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <json.hpp>

namespace razak {

namespace {

using nlohmann::json;
namespace it = boost::archive::iterators;

static_assert(std::endian::native == std::endian::little, "tower files are little-endian");

std::string to_base64(const std::string& bytes) {
  using Encoder = it::base64_from_binary<it::transform_width<std::string::const_iterator, 6, 8>>;
  std::string out(Encoder(bytes.begin()), Encoder(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::string from_base64(std::string text) {
  using Decoder = it::transform_width<it::binary_from_base64<std::string::const_iterator>, 8, 6>;
  std::size_t pad = 0;
  while (!text.empty() && text.back() == '=') {
    text.pop_back();
    ++pad;
  }
  if (pad > 2) throw Error(ErrorKind::FormatError, "bad base64 padding");
  try {
    std::string out(Decoder(text.begin()), Decoder(text.end()));
    // Trailing bits of a padded group decode to a spurious partial byte.
    const std::size_t expected = text.size() * 3 / 4;
    out.resize(expected);
    return out;
  } catch (const std::exception&) {
    throw Error(ErrorKind::FormatError, "invalid base64 data");
  }
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(ErrorKind::FormatError, std::string("missing field '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("field '") + name + "': " + e.what());
  }
}

json block_json(const BuildingBlock& b) { return {{"n", b.n}, {"a", b.a}}; }

BuildingBlock block_from(const json& j) {
  try {
    return make_block(field<std::size_t>(j, "n"), field<std::size_t>(j, "a"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::FormatError) throw;
    throw Error(ErrorKind::FormatError, e.what());
  }
}

}  // namespace

std::string encode_matrix(const CMatrix& m) {
  std::string bytes(static_cast<std::size_t>(m.size()) * 2 * sizeof(double), '\0');
  char* out = bytes.data();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double parts[2] = {m(r, c).real(), m(r, c).imag()};
      std::memcpy(out, parts, sizeof parts);
      out += sizeof parts;
    }
  }
  return to_base64(bytes);
}

CMatrix decode_matrix(const std::string& text, std::size_t dim) {
  const std::string bytes = from_base64(text);
  if (bytes.size() != dim * dim * 2 * sizeof(double)) {
    throw Error(ErrorKind::FormatError, "unitary sample has " + std::to_string(bytes.size()) +
                                            " bytes, expected " + std::to_string(dim * dim * 16));
  }
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix m(d, d);
  const char* in = bytes.data();
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      double parts[2];
      std::memcpy(parts, in, sizeof parts);
      in += sizeof parts;
      m(r, c) = Complex(parts[0], parts[1]);
    }
  }
  return m;
}

std::string tower_to_json(const Tower& tower) {
  json doc;
  doc["seed"] = block_json(tower.seed());
  doc["depth"] = tower.depth();
  doc["grid_size"] = tower.grid_size();
  doc["stages"] = json::array();
  for (const auto& b : tower.stages()) doc["stages"].push_back(block_json(b));
  doc["steps"] = json::array();
  for (const auto& step : tower.steps()) {
    json s;
    s["branches"] = json::array();
    for (const auto& xi : step.branches) {
      s["branches"].push_back({{"l", xi.l}, {"d", xi.d}, {"constant", xi.constant}});
    }
    s["dim"] = step.target.n_prime();
    const MatrixGridFunction u = step.unitary_samples();
    json path = json::array();
    for (const auto& sample : u.samples()) path.push_back(encode_matrix(sample));
    s["unitary_path"] = std::move(path);
    doc["steps"].push_back(std::move(s));
  }
  return doc.dump();
}

Tower tower_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("tower document is not JSON: ") + e.what());
  }
  const BuildingBlock seed = block_from(doc.contains("seed") ? doc["seed"] : json());
  const auto depth = field<std::size_t>(doc, "depth");
  const auto grid = field<std::size_t>(doc, "grid_size");
  if (grid == 0) throw Error(ErrorKind::FormatError, "grid_size must be >= 1");
  const json stages = doc.contains("stages") ? doc["stages"] : json();
  const json steps = doc.contains("steps") ? doc["steps"] : json();
  if (!stages.is_array() || !steps.is_array() || stages.size() != depth || steps.size() + 1 != depth) {
    throw Error(ErrorKind::FormatError, "stage and step counts do not match the depth");
  }

  std::vector<BuildingBlock> blocks;
  for (const auto& s : stages) blocks.push_back(block_from(s));
  if (!(blocks.front() == seed)) throw Error(ErrorKind::FormatError, "first stage differs from the seed");

  std::vector<ConnectingMap> maps;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const json& s = steps[k];
    ConnectingMap phi;
    phi.kind = ConnectingMap::Kind::Step;
    phi.source = blocks[k];
    phi.target = blocks[k + 1];
    phi.depth = 1;
    phi.grid_size = grid;
    const json branches = s.contains("branches") ? s["branches"] : json();
    if (!branches.is_array()) throw Error(ErrorKind::FormatError, "step without branches");
    for (const auto& b : branches) {
      BranchMap xi;
      xi.l = field<std::uint64_t>(b, "l");
      xi.d = field<int>(b, "d");
      xi.constant = field<bool>(b, "constant");
      if (xi.d < 0 || xi.d > 60 || xi.image_hi() > Dyadic{1, 0}) {
        throw Error(ErrorKind::FormatError, "branch image leaves [0,1]");
      }
      phi.branches.push_back(xi);
    }
    const auto dim = field<std::size_t>(s, "dim");
    if (dim != phi.target.n_prime() || phi.branches.size() * phi.source.n_prime() != dim) {
      throw Error(ErrorKind::FormatError, "step dimensions are inconsistent");
    }
    const json path = s.contains("unitary_path") ? s["unitary_path"] : json();
    if (!path.is_array() || path.size() != grid + 1) {
      throw Error(ErrorKind::FormatError, "unitary_path needs grid_size + 1 samples");
    }
    std::vector<CMatrix> samples;
    samples.reserve(path.size());
    for (const auto& p : path) {
      if (!p.is_string()) throw Error(ErrorKind::FormatError, "unitary sample must be a base64 string");
      samples.push_back(decode_matrix(p.get<std::string>(), dim));
    }

    PathPtr closed;
    const auto p0 = permutation_from_matrix(samples.front());
    const auto p1 = permutation_from_matrix(samples.back());
    if (p0 && p1) {
      auto candidate = std::make_shared<PermutationPath>(*p0, *p1);
      bool same = true;
      for (std::size_t j = 0; j <= grid && same; ++j) {
        same = candidate->at(MatrixGridFunction::point(grid, j)) == samples[j];
      }
      if (same) closed = candidate;
    }
    phi.path = closed ? closed : std::make_shared<SampledPath>(MatrixGridFunction(grid, std::move(samples)));
    maps.push_back(std::move(phi));
  }
  try {
    return Tower(seed, std::move(maps), grid);
  } catch (const Error& e) {
    throw Error(ErrorKind::FormatError, e.what());
  }
}

}  // namespace razak
