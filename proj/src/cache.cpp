#include "hitforge/cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <random>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "hitforge/error.hpp"

namespace hitforge::cache {

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xffU);
    }
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
bool get_le(std::istream& in, T& value) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
        return false;
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    }
    value = static_cast<T>(v);
    return true;
}

// RAII holder for an flock()ed lock file.
class FileLock {
public:
    FileLock(const std::filesystem::path& path, bool exclusive) {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) {
            ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
        }
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

std::filesystem::path lock_path(const std::filesystem::path& entry) {
    auto p = entry;
    p += ".lock";
    return p;
}

}  // namespace

std::filesystem::path entry_path(const std::filesystem::path& dir, std::size_t k, std::uint64_t n) {
    return dir / ("k" + std::to_string(k)) / ("n" + std::to_string(n) + ".hitf2");
}

void write_matrix(std::ostream& out, const BitMatrix& reduced) {
    if (!reduced.is_reduced()) {
        throw InvariantError("only reduced matrices are cached");
    }
    out.write(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(out, kFormatVersion);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(reduced.basis().vars()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(reduced.basis().degree()));
    put_le<std::uint32_t>(out, kColumnOrderId);
    put_le<std::uint64_t>(out, reduced.rows());
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        for (Word w : reduced.row(r)) {
            put_le<std::uint64_t>(out, w);
        }
    }
}

std::optional<BitMatrix> read_matrix(std::istream& in, ColumnBasisPtr basis, std::string* problem) {
    auto fail = [&](const std::string& why) -> std::optional<BitMatrix> {
        if (problem) {
            *problem = why;
        }
        return std::nullopt;
    };
    char magic[sizeof(kMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        return fail("bad magic");
    }
    std::uint32_t version = 0;
    std::uint8_t k = 0;
    std::uint32_t n = 0;
    std::uint32_t order = 0;
    std::uint64_t rows = 0;
    if (!get_le(in, version) || !get_le(in, k) || !get_le(in, n) || !get_le(in, order) || !get_le(in, rows)) {
        return fail("truncated header");
    }
    if (version != kFormatVersion) {
        return fail("unsupported format version " + std::to_string(version));
    }
    if (order != kColumnOrderId) {
        return fail("unknown column order id " + std::to_string(order));
    }
    if (k != basis->vars() || n != basis->degree()) {
        return fail("entry is for a different degree component");
    }
    if (rows > basis->size()) {
        return fail("more rows than columns");
    }
    BitMatrix m(basis);
    const std::size_t cols = basis->size();
    const std::size_t tail_bits = cols % kWordBits;
    std::vector<std::size_t> pivots;
    pivots.reserve(rows);
    for (std::uint64_t r = 0; r < rows; ++r) {
        auto row = m.append_zero_row();
        for (auto& w : row) {
            if (!get_le(in, w)) {
                return fail("truncated row data");
            }
        }
        if (tail_bits != 0 && (row.back() >> tail_bits) != 0) {
            return fail("bits set past the last column");
        }
        std::size_t lead = cols;
        for (std::size_t w = 0; w < row.size(); ++w) {
            if (row[w] != 0) {
                lead = w * kWordBits + static_cast<std::size_t>(std::countr_zero(row[w]));
                break;
            }
        }
        if (lead == cols) {
            return fail("zero row");
        }
        pivots.push_back(lead);
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        return fail("trailing bytes");
    }
    try {
        m.adopt_reduced(std::move(pivots));
    } catch (const InvariantError& e) {
        return fail(std::string("not in reduced echelon form: ") + e.what());
    }
    return m;
}

void store(const std::filesystem::path& dir, const BitMatrix& reduced) {
    const auto path = entry_path(dir, reduced.basis().vars(), reduced.basis().degree());
    std::filesystem::create_directories(path.parent_path());
    FileLock lock(lock_path(path), true);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write cache file " + tmp.string());
        }
        write_matrix(out, reduced);
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw Error("cannot write cache file " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::optional<BitMatrix> load(const std::filesystem::path& dir, ColumnBasisPtr basis, std::string* problem) {
    const auto path = entry_path(dir, basis->vars(), basis->degree());
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        return std::nullopt;
    }
    FileLock lock(lock_path(path), false);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (problem) {
            *problem = "cannot open " + path.string();
        }
        return std::nullopt;
    }
    auto m = read_matrix(in, std::move(basis), problem);
    if (!m && problem) {
        *problem = path.string() + ": " + *problem;
    }
    return m;
}

}  // namespace hitforge::cache
