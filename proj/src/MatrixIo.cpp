#include "apfp/MatrixIo.h"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace apfp {

namespace {

constexpr std::array<char, 8> kMagic = {'A', 'P', 'F', 'P', 'M', 'A', 'T', '\0'};

template <typename T>
void WriteLittleEndian(std::ostream &stream, T value) {
    std::array<char, sizeof(T)> bytes;
    for (size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    stream.write(bytes.data(), bytes.size());
}

template <typename T>
T ReadLittleEndian(std::istream &stream) {
    std::array<char, sizeof(T)> bytes;
    stream.read(bytes.data(), bytes.size());
    T value = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<T>(static_cast<uint8_t>(bytes[i])) << (8 * i);
    }
    return value;
}

}  // namespace

void WriteMatrix(std::ostream &stream, PackedMatrix const &matrix) {
    stream.write(kMagic.data(), kMagic.size());
    WriteLittleEndian<uint32_t>(stream, kMatrixFormatVersion);
    WriteLittleEndian<uint32_t>(stream, 0);
    WriteLittleEndian<uint64_t>(stream, static_cast<uint64_t>(matrix.Rows()));
    WriteLittleEndian<uint64_t>(stream, static_cast<uint64_t>(matrix.Cols()));
    WriteLittleEndian<uint64_t>(stream, static_cast<uint64_t>(matrix.WidthBits()));
    for (int j = 0; j < matrix.Cols(); ++j) {
        for (int i = 0; i < matrix.Rows(); ++i) {
            const auto bytes = matrix(i, j).ToBytes();
            stream.write(reinterpret_cast<char const *>(bytes.data()),
                         static_cast<std::streamsize>(bytes.size()));
        }
    }
    if (!stream) {
        throw std::runtime_error("Failed to write matrix stream.");
    }
}

PackedMatrix ReadMatrix(std::istream &stream) {
    std::array<char, 8> magic;
    stream.read(magic.data(), magic.size());
    if (!stream || magic != kMagic) {
        throw std::runtime_error("Not an APFP matrix stream.");
    }
    const auto version = ReadLittleEndian<uint32_t>(stream);
    if (version != kMatrixFormatVersion) {
        throw std::runtime_error("Unsupported matrix format version.");
    }
    ReadLittleEndian<uint32_t>(stream);  // reserved
    const auto rows = static_cast<int>(ReadLittleEndian<uint64_t>(stream));
    const auto cols = static_cast<int>(ReadLittleEndian<uint64_t>(stream));
    const auto width_bits = static_cast<int>(ReadLittleEndian<uint64_t>(stream));
    PackedMatrix matrix(rows, cols, width_bits);
    std::vector<uint8_t> bytes(static_cast<size_t>(PackedFloat::BytesPerValue(width_bits)));
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            stream.read(reinterpret_cast<char *>(bytes.data()),
                        static_cast<std::streamsize>(bytes.size()));
            if (!stream) {
                throw std::runtime_error("Truncated matrix stream.");
            }
            matrix(i, j) = PackedFloat::FromBytes(width_bits, bytes.data());
        }
    }
    return matrix;
}

void WriteMatrixFile(std::string const &path, PackedMatrix const &matrix) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("Cannot open " + path + " for writing.");
    }
    WriteMatrix(stream, matrix);
}

PackedMatrix ReadMatrixFile(std::string const &path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("Cannot open " + path + " for reading.");
    }
    return ReadMatrix(stream);
}

}  // namespace apfp
