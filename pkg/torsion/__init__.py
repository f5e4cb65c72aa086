"""Order-3 and order-5 criteria and the supporting symmetric identities."""
from torsion.criteria import OrderCertificate, is_order3, is_order5
from torsion.identities import check_symmetric_identities, printed_identity_discrepancy
