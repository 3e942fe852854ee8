#include "longwave/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "longwave/errors.hpp"

namespace longwave {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw Error("failed writing " + path.string());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_field_csv(const fs::path& path, const Field& field) {
    std::string out = "x,value\n";
    for (int j = 0; j < field.grid.n; ++j) {
        out += format_double(field.grid.node(j));
        out += ',';
        out += format_double(field.samples[j]);
        out += '\n';
    }
    write_text_file(path, out);
}

Field read_field_csv(const fs::path& path, const GridSpec& grid) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != "x,value") throw Error(path.string() + ": unexpected header '" + line + "'");
    Field f(grid);
    for (int j = 0; j < grid.n; ++j) {
        if (!std::getline(in, line)) throw Error(path.string() + ": truncated");
        const auto comma = line.find(',');
        f.samples[j] = std::stod(line.substr(comma + 1));
    }
    return f;
}

namespace {

std::string snapshot_name(const std::string& prefix, size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%04zu.csv", prefix.c_str(), i);
    return buf;
}

json grid_json(const GridSpec& grid) { return json{{"L", grid.length}, {"N", grid.n}}; }

} // namespace

void export_trajectory(const fs::path& dir, const Trajectory& traj) {
    fs::create_directories(dir);
    json manifest;
    manifest["grid"] = grid_json(traj.grid);
    manifest["model"] = traj.model_name;
    manifest["epsilon"] = traj.epsilon;
    manifest["delta"] = traj.delta;
    manifest["dt"] = traj.dt;
    manifest["status"] = traj.status == SolveStatus::ok ? "ok" : "blowup";
    manifest["last_valid_time"] = traj.last_valid_time;
    manifest["times"] = traj.times;
    std::vector<std::string> files;
    for (size_t i = 0; i < traj.states.size(); ++i) {
        const std::string name = snapshot_name("w", i);
        write_field_csv(dir / name, traj.states[i]);
        files.push_back(name);
    }
    manifest["files"] = files;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

void export_trajectory(const fs::path& dir, const BidiTrajectory& traj) {
    fs::create_directories(dir);
    json manifest;
    manifest["grid"] = grid_json(traj.grid);
    manifest["target"] = traj.target_name;
    manifest["epsilon"] = traj.epsilon;
    manifest["delta"] = traj.delta;
    manifest["dt"] = traj.dt;
    manifest["status"] = traj.status == SolveStatus::ok ? "ok" : "blowup";
    manifest["last_valid_time"] = traj.last_valid_time;
    manifest["times"] = traj.times;
    std::vector<std::string> files;
    for (size_t i = 0; i < traj.u_states.size(); ++i) {
        const std::string uname = snapshot_name("u", i);
        const std::string vname = snapshot_name("ut", i);
        write_field_csv(dir / uname, traj.u_states[i]);
        write_field_csv(dir / vname, traj.ut_states[i]);
        files.push_back(uname);
        files.push_back(vname);
    }
    manifest["files"] = files;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw Error("EVP_MD_CTX_new failed");
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

} // namespace longwave
