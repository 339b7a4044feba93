#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "coarse/amenability.hpp"
#include "coarse/growth.hpp"
#include "coarse/qi_constants.hpp"
#include "coarse/quasi_action.hpp"
#include "coarse/quasilattice.hpp"
#include "coarse/rough_graph.hpp"

namespace coarse::io {

using Json = nlohmann::ordered_json;

/// {"model":"h2","u":0,"a":1}, {"model":"zd","x":[..]}, {"model":"free","word":[..]}, ...
Json point_to_json(const SpaceModel& space, const Point& p);
Point point_from_json(const SpaceModel& space, const Json& j);

/// Compact form used inside lattice files: a bare coordinate array.
Json point_to_array(const SpaceModel& space, const Point& p);
Point point_from_array(const SpaceModel& space, const Json& j);

Json lattice_to_json(const QuasiLattice& lattice, const Json& config);
QuasiLattice lattice_from_json(const Json& j);

/// The lattice plus r/c; reading rebuilds the edges from them and checks the
/// stored edge count.
Json graph_to_json(const RoughGraph& graph, const Json& config);
RoughGraph graph_from_json(const Json& j);

Json to_json(const QiConstants& qi);
Json to_json(const LatticeVerification& v, std::uint64_t seed);
Json to_json(const AxiomCertificate& cert);
Json to_json(const OrbitReport& report);
Json to_json(const GrowthVerdict& verdict);
Json to_json(const SandwichVerdict& verdict);
Json to_json(const FolnerReport& report);

void write_series_csv(std::ostream& out, const GrowthSeries& series, const Json& config);
GrowthSeries read_series_csv(std::istream& in);
void write_folner_csv(std::ostream& out, const FolnerReport& report, const Json& config);
void write_edges_csv(std::ostream& out, const RoughGraph& graph, const Json& config);
void write_dot(std::ostream& out, const RoughGraph& graph, const Json& config);

/// Whole-file helpers; failures raise an io-kind Error.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Json read_json(const std::string& path);

}  // namespace coarse::io
