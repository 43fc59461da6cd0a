#include "acousim/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace acousim::io {

namespace {

std::runtime_error io_error(const std::filesystem::path& path, const std::string& what) {
    return std::runtime_error(path.string() + ": " + what);
}

}  // namespace

RawImage read_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
        std::string msg = image.message;
        png_image_free(&image);
        throw io_error(path, "cannot decode PNG (" + msg + ")");
    }
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    RawImage out;
    out.width = static_cast<int>(image.width);
    out.height = static_cast<int>(image.height);
    out.channels = color ? 3 : 1;
    out.data.resize(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, out.data.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw io_error(path, "cannot decode PNG (" + msg + ")");
    }
    return out;
}

void write_png(const std::filesystem::path& path, const RawImage& img) {
    if (img.channels != 1 && img.channels != 3) {
        throw io_error(path, "PNG writer supports 1 or 3 channels, got " +
                                 std::to_string(img.channels));
    }
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    image.format = img.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.data.data(), 0,
                                 nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw io_error(path, "cannot write PNG (" + msg + ")");
    }
}

void write_png(const std::filesystem::path& path, const Image& img) {
    RawImage raw{img.width(), img.height(), 1,
                 std::vector<std::uint8_t>(img.pixels().begin(), img.pixels().end())};
    write_png(path, raw);
}

namespace {

int read_header_int(std::istream& in, const std::filesystem::path& path) {
    // Skip whitespace and '#' comments between header tokens.
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (c != EOF && std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) throw io_error(path, "malformed PGM header");
    return value;
}

}  // namespace

Pgm read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error(path, "cannot open PGM");
    char magic[2] = {};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        throw io_error(path, "not a binary PGM (P5)");
    }
    Pgm pgm;
    pgm.width = read_header_int(in, path);
    pgm.height = read_header_int(in, path);
    pgm.maxval = read_header_int(in, path);
    if (pgm.width <= 0 || pgm.height <= 0 || pgm.maxval <= 0 || pgm.maxval > 65535) {
        throw io_error(path, "invalid PGM header values");
    }
    in.get();  // single whitespace before the raster

    const std::size_t n = static_cast<std::size_t>(pgm.width) * pgm.height;
    const bool wide = pgm.maxval > 255;
    std::vector<unsigned char> buf(n * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
        throw io_error(path, "truncated PGM raster");
    }
    pgm.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        pgm.samples[i] = wide ? static_cast<std::uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1])
                              : buf[i];
    }
    return pgm;
}

void write_pgm(const std::filesystem::path& path, const Pgm& pgm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error(path, "cannot open PGM for writing");
    out << "P5\n" << pgm.width << ' ' << pgm.height << '\n' << pgm.maxval << '\n';
    const bool wide = pgm.maxval > 255;
    for (std::uint16_t s : pgm.samples) {
        if (wide) out.put(static_cast<char>(s >> 8));
        out.put(static_cast<char>(s & 0xFF));
    }
    if (!out) throw io_error(path, "failed writing PGM");
}

}  // namespace acousim::io
