#include "dyntda/dms_io.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "dyntda/errors.hpp"

namespace dyntda {

namespace {

void write_binary(const std::string& path, const std::vector<double>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!out) throw io_error("short write: " + path);
}

std::vector<double> read_binary(const std::string& path, std::size_t expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::vector<double> data(expected);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(expected * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != expected * sizeof(double))
        throw io_error("short read or size mismatch: " + path);
    return data;
}

} // namespace

void save_dms(const DynamicMetricSpace& dms, const std::string& path, bool binary_payload) {
    const bool positional = dms.positional();
    nlohmann::json j{{"labels", dms.labels()},
                     {"t_start", dms.time_grid().t_start},
                     {"step", dms.time_grid().step},
                     {"count", dms.time_grid().count},
                     {"kind", positional ? "positions2d" : "distances"},
                     {"payload", binary_payload ? "binary" : "inline"}};
    if (positional) j["torus_size"] = dms.torus_size();
    const std::vector<double>& data = positional ? dms.positions() : dms.distances();

    if (binary_payload) {
        const std::string sidecar = std::filesystem::path(path).filename().string() + ".bin";
        j["data_file"] = sidecar;
        write_binary((std::filesystem::path(path).parent_path() / sidecar).string(), data);
    } else {
        j["data"] = data;
    }

    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

DynamicMetricSpace load_dms(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open for reading: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed DMS descriptor ") + path + ": " + e.what());
    }

    auto labels = j.at("labels").get<std::vector<std::string>>();
    TimeGrid grid(j.at("t_start").get<double>(), j.at("step").get<double>(),
                  j.at("count").get<int>());
    const std::string kind = j.at("kind").get<std::string>();
    const std::string payload = j.at("payload").get<std::string>();
    const std::size_t n = labels.size();
    const std::size_t expected = static_cast<std::size_t>(grid.count) * n *
                                 (kind == "positions2d" ? 2 : n);

    std::vector<double> data;
    if (payload == "binary") {
        const std::string sidecar = j.at("data_file").get<std::string>();
        data = read_binary((std::filesystem::path(path).parent_path() / sidecar).string(),
                           expected);
    } else if (payload == "inline") {
        data = j.at("data").get<std::vector<double>>();
        if (data.size() != expected) throw io_error("inline payload has wrong size: " + path);
    } else {
        throw io_error("unknown payload kind in " + path);
    }

    if (kind == "positions2d")
        return DynamicMetricSpace::from_positions(std::move(labels), grid, std::move(data),
                                                  j.at("torus_size").get<double>());
    if (kind == "distances")
        return DynamicMetricSpace::from_distances(std::move(labels), grid, std::move(data));
    throw io_error("unknown DMS kind in " + path);
}

} // namespace dyntda
