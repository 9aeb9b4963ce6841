//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/tensor/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>

namespace modof::tensor {
namespace {

void put_u32(std::ostream &o, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i)
    b[i] = static_cast<unsigned char>(v >> (8 * i));
  o.write(reinterpret_cast<const char *>(b), 4);
}

void put_u64(std::ostream &o, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i)
    b[i] = static_cast<unsigned char>(v >> (8 * i));
  o.write(reinterpret_cast<const char *>(b), 8);
}

void put_str(std::ostream &o, const std::string &s) {
  put_u32(o, static_cast<std::uint32_t>(s.size()));
  o.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
public:
  Reader(std::istream &in, std::string path): in_(in), path_(std::move(path)) { }

  void bytes(char *dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n)
      throw CheckpointError("truncated checkpoint: " + path_);
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char *>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(reinterpret_cast<char *>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::string str() {
    const std::uint32_t n = u32();
    if (n > (1u << 20))
      throw CheckpointError("corrupt string length in checkpoint: " + path_);
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }

private:
  std::istream &in_;
  std::string path_;
};

}  // namespace

const Mat *Checkpoint::find(const std::string &name) const {
  for (const auto &[n, m]: tensors)
    if (n == name)
      return &m;
  return nullptr;
}

void save_checkpoint(const std::string &path, const Checkpoint &c) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CheckpointError("cannot write checkpoint: " + path);
  out.write(kCheckpointMagic, 8);
  put_u32(out, kCheckpointVersion);
  put_u64(out, c.vocab_hash);
  put_u32(out, static_cast<std::uint32_t>(c.meta.size()));
  for (const auto &[k, v]: c.meta) {
    put_str(out, k);
    put_str(out, v);
  }
  put_u32(out, static_cast<std::uint32_t>(c.tensors.size()));
  for (const auto &[name, m]: c.tensors) {
    put_str(out, name);
    put_u64(out, static_cast<std::uint64_t>(m.rows()));
    put_u64(out, static_cast<std::uint64_t>(m.cols()));
    for (long i = 0; i < m.size(); ++i)
      put_u64(out, std::bit_cast<std::uint64_t>(m.data()[i]));
  }
  if (!out)
    throw CheckpointError("failed writing checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CheckpointError("cannot open checkpoint: " + path);
  Reader r(in, path);
  char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kCheckpointMagic, 8) != 0)
    throw CheckpointError("not a checkpoint file: " + path);
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion)
    throw CheckpointError("unsupported checkpoint version "
                          + std::to_string(version));
  Checkpoint c;
  c.vocab_hash = r.u64();
  const std::uint32_t nmeta = r.u32();
  for (std::uint32_t i = 0; i < nmeta; ++i) {
    std::string k = r.str();
    c.meta[k] = r.str();
  }
  const std::uint32_t nt = r.u32();
  for (std::uint32_t i = 0; i < nt; ++i) {
    std::string name = r.str();
    const std::uint64_t rows = r.u64(), cols = r.u64();
    if (rows > (1u << 24) || cols > (1u << 24) || rows * cols > (1u << 28))
      throw CheckpointError("corrupt tensor shape in checkpoint: " + name);
    Mat m(static_cast<long>(rows), static_cast<long>(cols));
    for (long k = 0; k < m.size(); ++k)
      m.data()[k] = std::bit_cast<double>(r.u64());
    c.tensors.emplace_back(std::move(name), std::move(m));
  }
  return c;
}

void store_params(Checkpoint &c, const ParamStore &ps, bool optimizer) {
  for (int i = 0; i < ps.size(); ++i)
    c.tensors.emplace_back("param/" + ps.at(i).name, ps.at(i).value);
  if (!optimizer)
    return;
  for (int i = 0; i < ps.size(); ++i) {
    c.tensors.emplace_back("m/" + ps.at(i).name, ps.at(i).m);
    c.tensors.emplace_back("v/" + ps.at(i).name, ps.at(i).v);
    c.tensors.emplace_back("vhat/" + ps.at(i).name, ps.at(i).vhat);
  }
  c.meta["optimizer_step"] = std::to_string(ps.step);
}

void restore_params(const Checkpoint &c, ParamStore &ps) {
  const auto copy = [&](const std::string &name, Mat &dst, bool required) {
    const Mat *m = c.find(name);
    if (!m) {
      if (required)
        throw CheckpointError("checkpoint lacks tensor " + name);
      return false;
    }
    if (m->rows() != dst.rows() || m->cols() != dst.cols())
      throw CheckpointError("shape mismatch for " + name + ": checkpoint "
                            + shape_string(*m) + ", model "
                            + shape_string(dst));
    dst = *m;
    return true;
  };
  for (int i = 0; i < ps.size(); ++i) {
    Param &p = ps.at(i);
    copy("param/" + p.name, p.value, true);
    copy("m/" + p.name, p.m, false);
    copy("v/" + p.name, p.v, false);
    copy("vhat/" + p.name, p.vhat, false);
  }
  const auto it = c.meta.find("optimizer_step");
  if (it != c.meta.end())
    ps.step = std::stoll(it->second);
}

}  // namespace modof::tensor
