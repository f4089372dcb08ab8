#include "pground/space.hpp"

namespace pground::space {

std::unique_ptr<AnalysisSpace> make_space(int n_locals, int n_params, VarOrder order) {
  std::vector<bdd::VarInfo> infos;
  auto add_xs = [&] {
    for (int i = 1; i <= n_locals; ++i)
      infos.push_back({"x" + std::to_string(i), bdd::VarKind::Plain});
  };
  auto add_scratch = [&] {
    for (int i = 1; i <= n_locals; ++i)
      infos.push_back({"_s" + std::to_string(i), bdd::VarKind::Scratch});
  };
  auto add_params = [&] {
    for (int i = 1; i <= n_params; ++i)
      infos.push_back({"b" + std::to_string(i), bdd::VarKind::Param});
  };
  if (order == VarOrder::ParamsFirst) {
    add_params();
    add_xs();
    add_scratch();
  } else {
    add_xs();
    add_scratch();
    add_params();
  }
  auto sp = std::make_unique<AnalysisSpace>(bdd::Manager(std::move(infos)));
  for (bdd::VarId v = 0; v < sp->mgr.var_count(); ++v) {
    switch (sp->mgr.var(v).kind) {
      case bdd::VarKind::Plain: sp->xs.push_back(v); break;
      case bdd::VarKind::Scratch: sp->scratch.push_back(v); break;
      case bdd::VarKind::Param: sp->params.push_back(v); break;
    }
  }
  return sp;
}

} // namespace pground::space
