from ratmath.eigen import rationalize_direction, sym_eigen_numeric
from ratmath.poly import Poly1, RationalFunction
from ratmath.rational import format_rational, parse_rational, parse_vector
from ratmath.tensor import TensorTable, antisymmetrize, contract, one_form, skew_to_two_form, wedge
