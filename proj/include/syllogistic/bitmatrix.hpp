#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace syl {

// Square boolean matrix with 64-bit packed rows.
class BitMatrix {
public:
    using Word = std::uint64_t;

    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const { return n_; }
    std::size_t words() const { return words_; }

    bool test(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
    void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= Word{1} << (c % 64); }
    void reset(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] &= ~(Word{1} << (c % 64)); }
    void assign(std::size_t r, std::size_t c, bool v) { v ? set(r, c) : reset(r, c); }

    Word* row(std::size_t r) { return bits_.data() + r * words_; }
    const Word* row(std::size_t r) const { return bits_.data() + r * words_; }

    std::vector<Word> row_copy(std::size_t r) const { return {row(r), row(r) + words_}; }

    // Returns true when the row changed.
    bool or_row(std::size_t r, const Word* src) {
        Word* dst = row(r);
        Word changed = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            Word next = dst[w] | src[w];
            changed |= next ^ dst[w];
            dst[w] = next;
        }
        return changed != 0;
    }

    bool row_intersects(std::size_t r, const Word* other) const {
        const Word* a = row(r);
        for (std::size_t w = 0; w < words_; ++w)
            if (a[w] & other[w]) return true;
        return false;
    }

    bool any() const {
        for (auto w : bits_)
            if (w) return true;
        return false;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    void set_identity() {
        for (std::size_t i = 0; i < n_; ++i) set(i, i);
    }

    BitMatrix transpose() const {
        BitMatrix t(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for_each_in_row(r, [&](std::size_t c) { t.set(c, r); });
        return t;
    }

    // Warshall closure on packed rows.
    void transitive_closure() {
        for (std::size_t k = 0; k < n_; ++k) {
            const auto krow = row_copy(k);
            for (std::size_t i = 0; i < n_; ++i)
                if (test(i, k)) or_row(i, krow.data());
        }
    }

    BitMatrix& operator|=(const BitMatrix& o) {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }

    BitMatrix operator&(const BitMatrix& o) const {
        BitMatrix out(n_);
        for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & o.bits_[i];
        return out;
    }

    // Boolean product: (X·Y)[i][j] = ∃k X[i][k] ∧ Y[k][j].
    friend BitMatrix operator*(const BitMatrix& x, const BitMatrix& y) {
        BitMatrix out(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            x.for_each_in_row(i, [&](std::size_t k) { out.or_row(i, y.row(k)); });
        return out;
    }

    template <class F>
    void for_each_in_row(std::size_t r, F&& f) const {
        for_each_bit(row(r), words_, f);
    }

    template <class F>
    static void for_each_bit(const Word* words, std::size_t count, F&& f) {
        for (std::size_t w = 0; w < count; ++w) {
            Word bits = words[w];
            while (bits) {
                auto b = static_cast<std::size_t>(std::countr_zero(bits));
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> bits_;
};

} // namespace syl
