#pragma once

#include <stdexcept>
#include <string>

#include "hazekit/image.hpp"

namespace hazekit {

/// File I/O failure; the message carries the path and the cause.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Decode an 8-bit PNG or JPEG into normalized floats (byte / 255).
/// The format is detected from the file's magic bytes, not the extension.
RgbImage load_image(const std::string& path);

/// Encode to PNG or JPEG by extension (.png, .jpg, .jpeg), rounding
/// clamp(v,0,1)*255 to the nearest integer per channel.
void save_image(const RgbImage& img, const std::string& path);

/// Decode to a scalar map (channel mean of the decoded image).
GrayMap load_gray(const std::string& path);

/// Save a scalar map as 8-bit grayscale PNG, [0,1] mapped linearly to [0,255].
void save_gray(const GrayMap& map, const std::string& path);

}  // namespace hazekit
