"""Variational circuit training with adaptive parameter pruning (QAdaPrune)."""
from .circuits import (
    AnsatzFamily,
    AnsatzSpec,
    CircuitOp,
    Feature,
    Fixed,
    Param,
    ParamCircuit,
    bind_and_run,
    build_hardware_efficient,
    build_iris_qnn,
    build_mnist_qnn,
    build_vqe_custom,
)
from .errors import CapabilityError, InputError, NumericError, ParseError, QAdaPruneError
from .gradients import ExpectationCost, GradResult, LinearReadout, finite_diff_grad, param_shift_grad
from .optimizers import Adam, GradientDescent, OptimizerConfig, OptimizerKind, RMSProp, make_optimizer
from .pruning import PruneConfig, PruneEvent, PruneState, QAdaPrune, update_thresholds
from .simulator import (
    GateKind,
    PauliSum,
    Statevector,
    ZeroProjector,
    apply_gate,
    expectation,
    init_basis_state,
    sampled_expectation,
    zero_state,
)

__version__ = "0.1.0"
