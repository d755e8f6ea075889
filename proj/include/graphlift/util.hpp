#ifndef GRAPHLIFT_UTIL_HPP
#define GRAPHLIFT_UTIL_HPP

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphlift {

// Error with a stable machine-parseable code. The CLI prints these as
// "error: <code>: <message>" on stderr.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

inline Error usage_error(const std::string& msg) { return Error("usage", msg); }
inline Error io_error(const std::string& msg) { return Error("io-error", msg); }
inline Error invalid_input(const std::string& msg) { return Error("invalid-input", msg); }
inline Error cap_exceeded(const std::string& msg) { return Error("cap-exceeded", msg); }
inline Error internal_error(const std::string& msg) { return Error("internal-error", msg); }

// Parse error with source position.
class ParseError : public Error {
  public:
    ParseError(int line, int col, const std::string& message)
        : Error("parse-error",
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + message),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_;
    int col_;
};

// Fixed-size dynamic bit vector used for states and denotations.
// Equality and hashing are word-wise, so all instances that are compared
// must share the same bit count.
class BitVec {
  public:
    BitVec() : nbits_(0) {}
    explicit BitVec(std::size_t nbits, bool value = false)
        : nbits_(nbits), words_((nbits + 63) / 64, value ? ~0ULL : 0ULL) {
        trim();
    }

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
    void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    BitVec& operator|=(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    // this := this & ~o
    BitVec& subtract(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    BitVec operator~() const {
        BitVec r(*this);
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    bool intersects(const BitVec& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    // true iff every bit set in this is also set in o
    bool is_subset_of(const BitVec& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.nbits_ == b.nbits_ && a.words_ == b.words_;
    }
    friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }
    friend bool operator<(const BitVec& a, const BitVec& b) { return a.words_ < b.words_; }

    std::uint64_t hash() const {
        std::uint64_t h = 14695981039346656037ULL;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        return h;
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                fn(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

  private:
    void trim() {
        if (nbits_ % 64 != 0 && !words_.empty())
            words_.back() &= (1ULL << (nbits_ % 64)) - 1;
    }

    std::size_t nbits_;
    std::vector<std::uint64_t> words_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& b) const { return static_cast<std::size_t>(b.hash()); }
};

inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 14695981039346656037ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return fnv1a64(&b, sizeof b, a);
}

std::vector<std::string> split(const std::string& s, char sep);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace graphlift

#endif
