#include "soccer/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <deque>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

#include "soccer/ppo.hpp"
#include "soccer/trainer.hpp"

namespace soccer {

namespace {

constexpr char kMagic[8] = {'S', 'C', 'R', 'L', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("checkpoint: truncated file");
    return v;
}

void write_string(std::ostream& os, const std::string& s) {
    write_pod<uint32_t>(os, static_cast<uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& is) {
    uint32_t n = read_pod<uint32_t>(is);
    std::string s(n, '\0');
    is.read(s.data(), n);
    if (!is) throw std::runtime_error("checkpoint: truncated string");
    return s;
}

void write_tensor_f32(std::ostream& os, const Tensor& t) {
    std::vector<float> buf(t.data.begin(), t.data.end());
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(buf.size() * sizeof(float)));
}

void read_tensor_f32(std::istream& is, Tensor& t) {
    std::vector<float> buf(t.size());
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!is) throw std::runtime_error("checkpoint: truncated tensor block");
    std::copy(buf.begin(), buf.end(), t.data.begin());
}

void write_tensor_f64(std::ostream& os, const Tensor& t) {
    os.write(reinterpret_cast<const char*>(t.data.data()),
             static_cast<std::streamsize>(t.data.size() * sizeof(double)));
}

void read_tensor_f64(std::istream& is, Tensor& t) {
    is.read(reinterpret_cast<char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * sizeof(double)));
    if (!is) throw std::runtime_error("checkpoint: truncated tensor block");
}

void write_header(std::ostream& os, ActorCritic& net) {
    os.write(kMagic, sizeof(kMagic));
    write_pod<uint32_t>(os, kVersion);
    uint32_t count = 0;
    net.visit([&](const std::string&, Tensor&) { ++count; });
    write_pod<uint32_t>(os, count);
    net.visit([&](const std::string& name, Tensor& t) {
        write_string(os, name);
        write_pod<uint32_t>(os, static_cast<uint32_t>(t.rows));
        write_pod<uint32_t>(os, static_cast<uint32_t>(t.cols));
    });
    net.visit([&](const std::string&, Tensor& t) { write_tensor_f32(os, t); });
}

// Verifies the dimension table against `net` and loads the blocks.
void read_header(std::istream& is, ActorCritic& net) {
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("checkpoint: bad magic (not a checkpoint file)");
    uint32_t version = read_pod<uint32_t>(is);
    if (version != kVersion)
        throw std::runtime_error("checkpoint: unsupported format version " +
                                 std::to_string(version) + " (expected " +
                                 std::to_string(kVersion) + ")");
    uint32_t count = read_pod<uint32_t>(is);
    std::vector<Tensor*> tensors = param_tensors(net);
    std::vector<std::string> names;
    net.visit([&](const std::string& n, Tensor&) { names.push_back(n); });
    if (count != tensors.size())
        throw std::runtime_error("checkpoint: tensor count mismatch");
    for (size_t i = 0; i < tensors.size(); ++i) {
        std::string name = read_string(is);
        uint32_t rows = read_pod<uint32_t>(is);
        uint32_t cols = read_pod<uint32_t>(is);
        if (name != names[i] || rows != static_cast<uint32_t>(tensors[i]->rows) ||
            cols != static_cast<uint32_t>(tensors[i]->cols)) {
            throw std::runtime_error(
                "checkpoint: dimension mismatch at tensor '" + name +
                "': file " + std::to_string(rows) + "x" + std::to_string(cols) +
                ", expected '" + names[i] + "' " +
                std::to_string(tensors[i]->rows) + "x" +
                std::to_string(tensors[i]->cols));
        }
    }
    for (Tensor* t : tensors) read_tensor_f32(is, *t);
}

}  // namespace

void save_policy_checkpoint(const std::string& path, const ActorCritic& net,
                            bool dense_active) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path);
    ActorCritic copy = net;
    write_header(os, copy);
    write_pod<uint8_t>(os, dense_active ? 1 : 0);
    write_pod<uint8_t>(os, 0);  // no trainer state
    if (!os) throw std::runtime_error("checkpoint: write failed: " + path);
}

PolicyCheckpoint load_policy_checkpoint(const std::string& path,
                                        const PipelineConfig& cfg) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    PolicyCheckpoint out{ActorCritic::make(cfg.net, cfg.obs), true};
    read_header(is, out.net);
    out.dense_active = read_pod<uint8_t>(is) != 0;
    return out;
}

struct TrainerCheckpointAccess {
    static void save(const std::string& path, const Trainer& trainer_const) {
        Trainer& trainer = const_cast<Trainer&>(trainer_const);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("checkpoint: cannot open " + path);
        write_header(os, trainer.net_);
        write_pod<uint8_t>(os, trainer.reward_.dense_active ? 1 : 0);
        write_pod<uint8_t>(os, 1);  // trainer state follows

        write_pod<int32_t>(os, trainer.iteration_);
        write_pod<uint8_t>(os, trainer.dense_milestone_hit_ ? 1 : 0);

        write_pod<int64_t>(os, trainer.opt_.t());
        auto& m = trainer.opt_.moments_m();
        auto& v = trainer.opt_.moments_v();
        for (size_t i = 0; i < m.size(); ++i) {
            write_tensor_f64(os, m[i]);
            write_tensor_f64(os, v[i]);
        }

        write_pod<uint32_t>(os, static_cast<uint32_t>(trainer.envs_.size()));
        for (const auto& env : trainer.envs_) {
            write_pod<int32_t>(os, env.curriculum.init_pos_level);
            write_pod<int32_t>(os, env.curriculum.field_level);
            write_pod<int32_t>(os, env.adversary_id);
            write_string(os, env.rng.serialize());
        }
        write_string(os, trainer.update_rng_.serialize());

        write_pod<uint32_t>(os, static_cast<uint32_t>(trainer.pool_.size()));
        write_pod<int32_t>(os, trainer.pool_.next_id());
        for (int id : trainer.pool_.ids()) {
            write_pod<int32_t>(os, id);
            ActorCritic snap = *trainer.pool_.find(id);
            snap.visit([&](const std::string&, Tensor& t) {
                write_tensor_f32(os, t);
            });
        }

        const auto& windows = trainer.tracker_.windows();
        write_pod<uint32_t>(os, static_cast<uint32_t>(windows.size()));
        for (const auto& [id, q] : windows) {
            write_pod<int32_t>(os, id);
            write_pod<uint32_t>(os, static_cast<uint32_t>(q.size()));
            for (uint8_t w : q) write_pod<uint8_t>(os, w);
        }
        if (!os) throw std::runtime_error("checkpoint: write failed: " + path);
    }

    static void load(const std::string& path, Trainer& trainer) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
        read_header(is, trainer.net_);
        trainer.reward_.dense_active = read_pod<uint8_t>(is) != 0;
        if (read_pod<uint8_t>(is) == 0) return;  // eval-only checkpoint

        trainer.iteration_ = read_pod<int32_t>(is);
        trainer.dense_milestone_hit_ = read_pod<uint8_t>(is) != 0;

        trainer.opt_.init(trainer.net_);
        trainer.opt_.set_t(read_pod<int64_t>(is));
        auto& m = trainer.opt_.moments_m();
        auto& v = trainer.opt_.moments_v();
        for (size_t i = 0; i < m.size(); ++i) {
            read_tensor_f64(is, m[i]);
            read_tensor_f64(is, v[i]);
        }

        uint32_t n_envs = read_pod<uint32_t>(is);
        if (n_envs != trainer.envs_.size())
            throw std::runtime_error("checkpoint: env count mismatch");
        for (auto& env : trainer.envs_) {
            env.curriculum.init_pos_level = read_pod<int32_t>(is);
            env.curriculum.field_level = read_pod<int32_t>(is);
            env.adversary_id = read_pod<int32_t>(is);
            env.rng.deserialize(read_string(is));
        }
        trainer.update_rng_.deserialize(read_string(is));

        uint32_t n_snaps = read_pod<uint32_t>(is);
        int next_id = read_pod<int32_t>(is);
        std::vector<std::pair<int, ActorCritic>> snaps;
        for (uint32_t i = 0; i < n_snaps; ++i) {
            int id = read_pod<int32_t>(is);
            ActorCritic snap =
                ActorCritic::make(trainer.cfg_.net, trainer.cfg_.obs);
            snap.visit(
                [&](const std::string&, Tensor& t) { read_tensor_f32(is, t); });
            snaps.emplace_back(id, std::move(snap));
        }
        trainer.pool_.restore(std::move(snaps), next_id);

        uint32_t n_windows = read_pod<uint32_t>(is);
        std::map<int, std::deque<uint8_t>> windows;
        for (uint32_t i = 0; i < n_windows; ++i) {
            int id = read_pod<int32_t>(is);
            uint32_t n = read_pod<uint32_t>(is);
            std::deque<uint8_t> q;
            for (uint32_t j = 0; j < n; ++j) q.push_back(read_pod<uint8_t>(is));
            windows[id] = std::move(q);
        }
        trainer.tracker_.restore(std::move(windows));

        // Episodes restart fresh on resume (the saved RNG streams make the
        // continuation deterministic).
        std::fill(trainer.env_started_.begin(), trainer.env_started_.end(), 0);
        for (size_t e = 0; e < trainer.envs_.size(); ++e)
            trainer.env_adversary_[e] =
                trainer.pool_.find_shared(trainer.envs_[e].adversary_id);
    }
};

void save_trainer_checkpoint(const std::string& path, const Trainer& trainer) {
    TrainerCheckpointAccess::save(path, trainer);
}

void load_trainer_checkpoint(const std::string& path, Trainer& trainer) {
    TrainerCheckpointAccess::load(path, trainer);
}

}  // namespace soccer
