"""Regenerate the committed FCIDUMP fixtures and reference energies.

Requires pyscf. Run from the repository root:

    python3 fixtures/generate_fixtures.py

Writes fixtures/<name>.fcidump and fixtures/references.json.
"""

import json
import os

from pyscf import gto, scf, mcscf, fci
from pyscf.tools import fcidump

HERE = os.path.dirname(os.path.abspath(__file__))

MOLECULES = {
    "h2": {
        "atom": "H 0 0 0; H 0 0 0.735",
        "subgroup": "D2h",
        "windows": [],
        "full_fci": True,
        "freeze": 0,
    },
    "lih": {
        "atom": "Li 0 0 0; H 0 0 1.595",
        "subgroup": "C2v",
        "windows": [],
        "full_fci": True,
        "freeze": 1,
    },
    "beh2": {
        "atom": "Be 0 0 0; H 0 0 1.326; H 0 0 -1.326",
        "subgroup": "D2h",
        "windows": [],
        "full_fci": True,
        "freeze": 1,
    },
    "ch3nh2": {
        "atom": """
            C  0.0519020  0.7064670  0.0000000
            N  0.0519020 -0.7615000  0.0000000
            H -0.9428060  1.1684160  0.0000000
            H  0.5906740  1.0624810  0.8789330
            H  0.5906740  1.0624810 -0.8789330
            H -0.4566340 -1.1008410 -0.8075530
            H -0.4566340 -1.1008410  0.8075530
        """,
        "subgroup": "Cs",
        "windows": [(2, 2), (4, 4), (6, 6), (8, 8), (10, 10), (12, 12)],
        "full_fci": False,
        "freeze": 2,
    },
    "ch2o2": {
        "atom": """
            C  0.0000000  0.3858930  0.0000000
            O -0.8988900 -0.6261750  0.0000000
            O  1.1799510  0.1951720  0.0000000
            H -0.4628290  1.3844990  0.0000000
            H -1.7856570 -0.2518330  0.0000000
        """,
        "subgroup": "Cs",
        "windows": [(6, 6)],
        "full_fci": False,
        "freeze": 3,
        "skip_frozen_fci": True,
    },
}


def casci_energy(mf, ncas, nelecas):
    mc = mcscf.CASCI(mf, ncas, nelecas)
    mc.verbose = 0
    mc.fcisolver.conv_tol = 1e-12
    return float(mc.kernel()[0])


def main():
    refs = {}
    for name, spec in MOLECULES.items():
        mol = gto.M(
            atom=spec["atom"],
            basis="sto-3g",
            unit="Angstrom",
            symmetry=spec["subgroup"],
            verbose=0,
        )
        mf = scf.RHF(mol)
        mf.conv_tol = 1e-12
        mf.kernel()
        if not mf.converged:
            raise RuntimeError(f"SCF did not converge for {name}")
        path = os.path.join(HERE, f"{name}.fcidump")
        fcidump.from_scf(mf, path, tol=1e-15, molpro_orbsym=True)

        nmo = mf.mo_coeff.shape[1]
        nelec = mol.nelectron
        entry = {
            "point_group": mol.groupname,
            "norb": nmo,
            "nelec": nelec,
            "hf_energy": float(mf.e_tot),
            "geometry_angstrom": spec["atom"].strip(),
            "basis": "STO-3G",
            "casci": {},
        }
        if spec["full_fci"]:
            cis = fci.FCI(mf)
            cis.conv_tol = 1e-12
            entry["fci_energy"] = float(cis.kernel()[0])
        nf = spec["freeze"]
        if nf > 0 and nmo - nf <= 13 and not spec.get("skip_frozen_fci"):
            entry["frozen_core_fci_energy"] = casci_energy(mf, nmo - nf, nelec - 2 * nf)
        for ne, no in spec["windows"]:
            entry["casci"][f"{ne}e{no}o"] = casci_energy(mf, no, ne)
        refs[name] = entry
        print(name, json.dumps({k: v for k, v in entry.items() if k != "geometry_angstrom"}))

    with open(os.path.join(HERE, "references.json"), "w") as fh:
        json.dump(refs, fh, indent=2, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
