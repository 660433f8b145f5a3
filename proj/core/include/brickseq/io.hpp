#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brickseq/brick.hpp"
#include "brickseq/decode.hpp"
#include "brickseq/geometry.hpp"
#include "brickseq/reward.hpp"
#include "brickseq/stability.hpp"
#include "brickseq/token.hpp"

namespace brickseq {

// All parsers throw Error(ParseError) on malformed input; file helpers throw
// Error(IoError) when a path cannot be read or written.

/// {"bricks": [{"h":..,"w":..,"x":..,"y":..,"z":..}, ...]} in generation order.
std::string assembly_to_json(const BrickAssembly& assembly);
/// Validates every brick (SizeNotInLibrary, OutOfBounds, Collision).
BrickAssembly assembly_from_json(std::string_view text);

/// {"scores", "feasible", "min_score"} plus contacts, forces, slacks and t*.
std::string report_to_json(const StabilityReport& report);
StabilityReport report_from_json(std::string_view text);

std::string reward_to_json(const RewardBreakdown& reward);
RewardBreakdown reward_from_json(std::string_view text);

/// Token sequences inside JSON are lists of codebook ids.
std::string pair_to_json(const PreferencePair& pair);
PreferencePair pair_from_json(std::string_view text);

/// {"size": 20, "cells": [[x, y, z], ...]} with cells in index order.
std::string grid_to_json(const VoxelGrid& grid);
VoxelGrid grid_from_json(std::string_view text);

/// Assembly, sequence (text and ids), stability summary and decode trace.
std::string generate_result_to_json(const GenerateResult& result);

/// One point per line, "x y z" or "x y z nx ny nz". Blank lines and '#' comments are
/// skipped. Values are written with round-trip precision.
std::string cloud_to_text(const PointCloud& cloud);
PointCloud cloud_from_text(std::string_view text);

/// "v x y z" and 1-based "f a b c" lines.
std::string mesh_to_obj(const SurfaceMesh& mesh);

std::string read_text_file(const std::filesystem::path& path);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Reads a token file: binary when it starts with a length header matching its size,
/// text otherwise.
TokenSequence read_token_file(const std::filesystem::path& path);

}  // namespace brickseq
