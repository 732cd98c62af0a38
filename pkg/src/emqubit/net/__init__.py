from .netlist import Circuit, GateOp, format_netlist, parse_netlist
from .simulate import ResourceReport, SimulationResult, estimate_resources, simulate
from .verify import VerifyReport, verify_against_oracle
