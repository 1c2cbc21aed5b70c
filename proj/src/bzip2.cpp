// bzip2 decompressor (decode only).
//
// The environment ships no bzip2 development library, so the format is
// implemented here directly: per-block Huffman-coded MTF/RLE2 symbol
// stream, inverse Burrows-Wheeler transform, RLE1 expansion, and the
// bzip2 CRC-32 over the recovered bytes. Randomized blocks (deprecated
// since bzip2 0.9.5) are rejected. Layout reference: the canonical
// bzip2 implementation and its file-format documentation.

#include "sarcbench/bzip2.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <vector>

#include "sarcbench/errors.hpp"

namespace sarcbench {

namespace {

constexpr std::uint64_t kBlockMagic = 0x314159265359ULL;
constexpr std::uint64_t kStreamEndMagic = 0x177245385090ULL;
constexpr int kMaxCodeLen = 23;
constexpr int kGroupSize = 50;

struct Crc32 {
    // bzip2 CRC: polynomial 0x04c11db7, MSB-first, init/final 0xffffffff.
    static const std::array<std::uint32_t, 256>& table() {
        static const auto t = [] {
            std::array<std::uint32_t, 256> out{};
            for (std::uint32_t i = 0; i < 256; ++i) {
                std::uint32_t c = i << 24;
                for (int k = 0; k < 8; ++k) {
                    c = (c & 0x80000000U) ? (c << 1) ^ 0x04c11db7U : (c << 1);
                }
                out[i] = c;
            }
            return out;
        }();
        return t;
    }

    void update(unsigned char b) {
        value = (value << 8) ^ table()[(value >> 24) ^ b];
    }
    std::uint32_t final() const { return ~value; }

    std::uint32_t value = 0xFFFFFFFFU;
};

class BitReader {
public:
    explicit BitReader(std::string_view data) : data_(data) {}

    std::uint32_t bits(int n) {
        std::uint32_t out = 0;
        for (int k = 0; k < n; ++k) {
            if (pos_ >= data_.size() * 8) throw IoError("bz2: unexpected end of stream");
            const auto byte = static_cast<unsigned char>(data_[pos_ >> 3]);
            out = (out << 1) | ((byte >> (7 - (pos_ & 7))) & 1U);
            ++pos_;
        }
        return out;
    }

    std::uint64_t bits48() {
        return (static_cast<std::uint64_t>(bits(24)) << 24) | bits(24);
    }

    void align_to_byte() { pos_ = (pos_ + 7) & ~std::size_t{7}; }
    bool at_end() const { return pos_ >= data_.size() * 8; }
    std::size_t byte_pos() const { return pos_ >> 3; }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

struct HuffmanTable {
    std::array<std::int32_t, kMaxCodeLen + 1> limit{};
    std::array<std::int32_t, kMaxCodeLen + 1> base{};
    std::array<std::int32_t, 258> perm{};
    int min_len = 0;
    int max_len = 0;

    void build(const std::uint8_t* lengths, int alpha_size) {
        min_len = kMaxCodeLen;
        max_len = 0;
        for (int s = 0; s < alpha_size; ++s) {
            min_len = std::min<int>(min_len, lengths[s]);
            max_len = std::max<int>(max_len, lengths[s]);
        }
        int pp = 0;
        for (int len = min_len; len <= max_len; ++len) {
            for (int s = 0; s < alpha_size; ++s) {
                if (lengths[s] == len) perm[pp++] = s;
            }
        }
        base.fill(0);
        for (int s = 0; s < alpha_size; ++s) base[lengths[s] + 1]++;
        for (int i = 1; i <= kMaxCodeLen; ++i) base[i] += base[i - 1];
        limit.fill(0);
        std::int32_t vec = 0;
        for (int len = min_len; len <= max_len; ++len) {
            vec += base[len + 1] - base[len];
            limit[len] = vec - 1;
            vec <<= 1;
        }
        for (int len = min_len + 1; len <= max_len; ++len) {
            base[len] = ((limit[len - 1] + 1) << 1) - base[len];
        }
    }

    int decode(BitReader& br) const {
        int len = min_len;
        std::int32_t vec = static_cast<std::int32_t>(br.bits(len));
        while (len <= max_len && vec > limit[len]) {
            ++len;
            vec = (vec << 1) | static_cast<std::int32_t>(br.bits(1));
        }
        if (len > max_len) throw IoError("bz2: invalid Huffman code");
        const std::int32_t idx = vec - base[len];
        if (idx < 0 || idx >= 258) throw IoError("bz2: invalid Huffman code");
        return perm[idx];
    }
};

// Decodes one block's BWT string (after Huffman + MTF + RLE2 undo).
std::vector<std::uint8_t> read_block_bwt(BitReader& br, std::size_t max_block) {
    // symbol map
    const std::uint32_t used16 = br.bits(16);
    std::array<std::uint8_t, 256> seq_to_unseq{};
    int n_in_use = 0;
    for (int i = 0; i < 16; ++i) {
        if (used16 & (1U << (15 - i))) {
            const std::uint32_t bitsmap = br.bits(16);
            for (int j = 0; j < 16; ++j) {
                if (bitsmap & (1U << (15 - j))) {
                    seq_to_unseq[n_in_use++] = static_cast<std::uint8_t>(i * 16 + j);
                }
            }
        }
    }
    if (n_in_use == 0) throw IoError("bz2: empty symbol map");
    const int alpha_size = n_in_use + 2;

    const int n_groups = static_cast<int>(br.bits(3));
    if (n_groups < 2 || n_groups > 6) throw IoError("bz2: bad group count");
    const int n_selectors = static_cast<int>(br.bits(15));
    if (n_selectors < 1) throw IoError("bz2: bad selector count");

    std::vector<std::uint8_t> selectors(static_cast<std::size_t>(n_selectors));
    {
        std::array<std::uint8_t, 6> mtf{};
        for (int g = 0; g < n_groups; ++g) mtf[g] = static_cast<std::uint8_t>(g);
        for (int i = 0; i < n_selectors; ++i) {
            int j = 0;
            while (br.bits(1)) {
                if (++j >= n_groups) throw IoError("bz2: bad selector");
            }
            const std::uint8_t g = mtf[j];
            for (; j > 0; --j) mtf[j] = mtf[j - 1];
            mtf[0] = g;
            selectors[static_cast<std::size_t>(i)] = g;
        }
    }

    std::vector<HuffmanTable> tables(static_cast<std::size_t>(n_groups));
    {
        std::array<std::uint8_t, 258> lengths{};
        for (int g = 0; g < n_groups; ++g) {
            int curr = static_cast<int>(br.bits(5));
            for (int s = 0; s < alpha_size; ++s) {
                while (br.bits(1)) {
                    curr += br.bits(1) ? -1 : 1;
                }
                if (curr < 1 || curr > 20) throw IoError("bz2: bad code length");
                lengths[s] = static_cast<std::uint8_t>(curr);
            }
            tables[static_cast<std::size_t>(g)].build(lengths.data(), alpha_size);
        }
    }

    // MTF + RLE2 decode of the symbol stream.
    std::vector<std::uint8_t> bwt;
    bwt.reserve(max_block / 4);
    std::array<std::uint8_t, 256> mtf_list{};
    for (int i = 0; i < n_in_use; ++i) mtf_list[i] = seq_to_unseq[i];

    const int eob = alpha_size - 1;
    int group_pos = 0;
    int selector_idx = -1;
    const HuffmanTable* table = nullptr;
    std::size_t run_len = 0;
    std::size_t run_bit = 1;

    for (;;) {
        if (group_pos == 0) {
            if (++selector_idx >= n_selectors) throw IoError("bz2: selectors exhausted");
            table = &tables[selectors[static_cast<std::size_t>(selector_idx)]];
            group_pos = kGroupSize;
        }
        --group_pos;
        const int sym = table->decode(br);

        if (sym <= 1) {  // RUNA / RUNB
            run_len += run_bit << sym;
            run_bit <<= 1;
            continue;
        }
        if (run_len > 0) {
            if (bwt.size() + run_len > max_block) throw IoError("bz2: block overflow");
            bwt.insert(bwt.end(), run_len, mtf_list[0]);
            run_len = 0;
            run_bit = 1;
        }
        if (sym == eob) break;

        const int j = sym - 1;
        if (j >= n_in_use) throw IoError("bz2: MTF index out of range");
        const std::uint8_t b = mtf_list[j];
        std::memmove(&mtf_list[1], &mtf_list[0], static_cast<std::size_t>(j));
        mtf_list[0] = b;
        if (bwt.size() + 1 > max_block) throw IoError("bz2: block overflow");
        bwt.push_back(b);
    }
    return bwt;
}

// Inverse BWT + RLE1 expansion; appends recovered bytes and updates crc.
void invert_block(const std::vector<std::uint8_t>& bwt, std::uint32_t orig_ptr,
                  std::string& out, Crc32& crc) {
    const std::size_t n = bwt.size();
    if (orig_ptr >= n) throw IoError("bz2: bad BWT origin pointer");

    std::array<std::size_t, 256> cftab{};
    for (std::uint8_t b : bwt) cftab[b]++;
    std::size_t sum = 0;
    for (int i = 0; i < 256; ++i) {
        const std::size_t c = cftab[static_cast<std::size_t>(i)];
        cftab[static_cast<std::size_t>(i)] = sum;
        sum += c;
    }
    std::vector<std::uint32_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        next[cftab[bwt[i]]++] = static_cast<std::uint32_t>(i);
    }

    // Walk the rotation chain and undo RLE1 (4 equal bytes + repeat count).
    std::uint32_t pos = next[orig_ptr];
    int run = 0;
    int prev = -1;
    std::size_t emitted = 0;
    while (emitted < n) {
        const std::uint8_t b = bwt[pos];
        pos = next[pos];
        ++emitted;
        if (run == 4) {
            // b is a repeat count for the preceding 4-byte run
            for (int k = 0; k < static_cast<int>(b); ++k) {
                out.push_back(static_cast<char>(prev));
                crc.update(static_cast<std::uint8_t>(prev));
            }
            run = 0;
            prev = -1;
            continue;
        }
        run = (b == prev) ? run + 1 : 1;
        prev = b;
        out.push_back(static_cast<char>(b));
        crc.update(b);
    }
    if (run == 4) throw IoError("bz2: truncated RLE1 run");
}

// One stream: header already verified by caller, br positioned after it.
void decode_stream(BitReader& br, int level, std::string& out) {
    const std::size_t max_block = static_cast<std::size_t>(level) * 100000;
    std::uint32_t combined_crc = 0;
    for (;;) {
        const std::uint64_t magic = br.bits48();
        if (magic == kStreamEndMagic) {
            const std::uint32_t stream_crc = br.bits(32);
            if (stream_crc != combined_crc) throw IoError("bz2: stream CRC mismatch");
            br.align_to_byte();
            return;
        }
        if (magic != kBlockMagic) throw IoError("bz2: bad block magic");

        const std::uint32_t block_crc = br.bits(32);
        if (br.bits(1)) throw IoError("bz2: randomized blocks are not supported");
        const std::uint32_t orig_ptr = br.bits(24);

        const auto bwt = read_block_bwt(br, max_block);
        Crc32 crc;
        invert_block(bwt, orig_ptr, out, crc);
        if (crc.final() != block_crc) throw IoError("bz2: block CRC mismatch");
        combined_crc = ((combined_crc << 1) | (combined_crc >> 31)) ^ block_crc;
    }
}

}  // namespace

bool looks_like_bz2(std::string_view bytes) {
    return bytes.size() >= 4 && bytes[0] == 'B' && bytes[1] == 'Z' && bytes[2] == 'h' &&
           bytes[3] >= '1' && bytes[3] <= '9';
}

std::string bz2_decompress(std::string_view compressed) {
    if (!looks_like_bz2(compressed)) throw IoError("bz2: missing stream header");
    std::string out;
    BitReader br(compressed);
    while (!br.at_end()) {
        const char h0 = static_cast<char>(br.bits(8));
        const char h1 = static_cast<char>(br.bits(8));
        const char h2 = static_cast<char>(br.bits(8));
        const char lv = static_cast<char>(br.bits(8));
        if (h0 != 'B' || h1 != 'Z' || h2 != 'h' || lv < '1' || lv > '9') {
            throw IoError("bz2: bad stream header");
        }
        decode_stream(br, lv - '0', out);
    }
    return out;
}

}  // namespace sarcbench
