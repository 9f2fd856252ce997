#include "gvns/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "gvns/errors.hpp"

namespace gvns {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char magic[4] = {'G', 'V', 'N', 'S'};
constexpr std::size_t header_bytes = 4 + 4 + 4 + 4 * 8;

template <class T>
void append(std::vector<std::uint8_t>& out, T v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out.insert(out.end(), p, p + sizeof(T));
}

template <class T>
T take(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    T v;
    std::memcpy(&v, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

}  // namespace

std::vector<std::uint8_t> save_checkpoint(const State& state, const PhysParams& params) {
    const GridSpec& g = state.omega.grid();
    std::vector<std::uint8_t> out;
    out.reserve(header_bytes + g.real_size() * 16);
    out.insert(out.end(), magic, magic + 4);
    append<std::uint32_t>(out, checkpoint_version);
    append<std::uint32_t>(out, std::uint32_t(g.n()));
    append(out, g.length());
    append(out, state.t);
    append(out, params.nu);
    append(out, params.mu);
    // + 0.0 folds negative zeros so that reloading and saving is byte stable
    for (const cplx& c : state.omega.to_full()) {
        append(out, c.real() + 0.0);
        append(out, c.imag() + 0.0);
    }
    return out;
}

std::pair<State, CheckpointHeader> load_checkpoint(const std::vector<std::uint8_t>& bytes,
                                                   const std::optional<GridSpec>& expected) {
    using Kind = CheckpointError::Kind;
    if (bytes.size() < 4) throw CheckpointError(Kind::truncated, "checkpoint: file shorter than magic");
    if (std::memcmp(bytes.data(), magic, 4) != 0) throw CheckpointError(Kind::bad_magic, "checkpoint: bad magic");
    if (bytes.size() < 8) throw CheckpointError(Kind::truncated, "checkpoint: truncated header");
    std::size_t pos = 4;
    CheckpointHeader h;
    h.version = take<std::uint32_t>(bytes, pos);
    if (h.version != checkpoint_version) {
        throw CheckpointError(Kind::bad_version, "checkpoint: unsupported version " + std::to_string(h.version));
    }
    if (bytes.size() < header_bytes) throw CheckpointError(Kind::truncated, "checkpoint: truncated header");
    h.n = take<std::uint32_t>(bytes, pos);
    h.length = take<double>(bytes, pos);
    h.t = take<double>(bytes, pos);
    h.nu = take<double>(bytes, pos);
    h.mu = take<double>(bytes, pos);

    if (expected && (int(h.n) != expected->n() || h.length != expected->length())) {
        throw CheckpointError(Kind::grid_mismatch, "checkpoint: grid n=" + std::to_string(h.n) +
                                                       " does not match expected n=" +
                                                       std::to_string(expected->n()));
    }
    const GridSpec grid = [&] {
        try {
            return GridSpec(int(h.n), h.length);
        } catch (const ValidationError& e) {
            throw CheckpointError(Kind::grid_mismatch, std::string("checkpoint: invalid grid: ") + e.what());
        }
    }();
    const std::size_t count = grid.real_size();
    if (bytes.size() != header_bytes + count * 16) {
        throw CheckpointError(Kind::truncated, "checkpoint: expected " + std::to_string(header_bytes + count * 16) +
                                                   " bytes, got " + std::to_string(bytes.size()));
    }
    std::vector<cplx> full(count);
    for (cplx& c : full) {
        const double re = take<double>(bytes, pos);
        const double im = take<double>(bytes, pos);
        c = {re, im};
    }
    State s{h.t, SpectralField::from_full(grid, full)};
    return {std::move(s), h};
}

void write_checkpoint_file(const std::string& path, const State& state, const PhysParams& params) {
    const auto bytes = save_checkpoint(state, params);
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw CheckpointError(CheckpointError::Kind::io, "checkpoint: cannot write " + path);
}

std::pair<State, CheckpointHeader> read_checkpoint_file(const std::string& path,
                                                        const std::optional<GridSpec>& expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError(CheckpointError::Kind::io, "checkpoint: cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_checkpoint(bytes, expected);
}

}  // namespace gvns
