"""Regenerate the bundled FCIDUMP fixtures (RHF, STO-3G) with PySCF.

Usage: python3 fixtures/generate.py [output_dir]

Each molecule gets `<name>.fcidump` and a `<name>.toml` sidecar with the
geometry, basis and reference SCF energy.
"""

import sys
from pathlib import Path

from pyscf import gto, scf
from pyscf.tools import fcidump

MOLECULES = {
    "h2": "H 0 0 0; H 0 0 0.735",
    "h4": "H 0 0 0; H 0 0 0.735; H 0 0 1.535; H 0 0 2.135",
    "h6": "H 0 0 0; H 0 0 0.735; H 0 0 1.535; H 0 0 2.135; H 0 0 2.835; H 0 0 3.57",
    "lih": "Li 0.0 0.0 0.0; H 0.0 0.0 1.5949",
    "nh3": "N 0.0000 0.0000 0.0000; H 0.0000 -0.9377 -0.3816; "
    "H 0.8121 0.4689 -0.3816; H -0.8121 0.4689 -0.3816",
    "beh2": "Be 0.0000 0.0000 0.0000; H 0.0000 0.0000 1.3264; H 0.0000 0.0000 -1.3264",
    "h2o": "O 0.0000 0.0000 0.1173; H 0.0000 0.7572 -0.4692; H 0.0000 -0.7572 -0.4692",
}

BASIS = "sto-3g"


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    out.mkdir(parents=True, exist_ok=True)
    for name, geometry in MOLECULES.items():
        mol = gto.M(atom=geometry, basis=BASIS, unit="Angstrom", symmetry=False, verbose=0)
        mf = scf.RHF(mol)
        mf.conv_tol = 1e-12
        energy = mf.kernel()
        fcidump.from_scf(mf, str(out / f"{name}.fcidump"), tol=1e-12)
        (out / f"{name}.toml").write_text(
            f'molecule = "{name.upper()}"\n'
            f'geometry = "{geometry}"\n'
            f'units = "angstrom"\n'
            f'basis = "STO-3G"\n'
            f"spatial_orbitals = {mol.nao_nr()}\n"
            f"electrons = {mol.nelectron}\n"
            f"nuclear_repulsion = {mol.energy_nuc():.15f}\n"
            f"rhf_energy = {energy:.15f}\n"
            f'generator = "pyscf {__import__("pyscf").__version__}"\n'
        )
        print(f"{name}: norb={mol.nao_nr()} nelec={mol.nelectron} E_rhf={energy:.10f}")


if __name__ == "__main__":
    main()
