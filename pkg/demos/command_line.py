"""
The infinitary command
======================

The same entry point as the installed ``infinitary`` script, driven
in-process here.
"""

from infinitary.cli import main

main(["sigma", "-v", "1020"])
main(["divisors", "--kind", "biunitary", "144"])
main(["search", "--limit", "2^12", "--format", "csv"])
main(["search", "--limit", "10^3", "--inner", "unitary", "--outer", "unitary", "--k", "2"])
main(["lemmas", "--lemma", "L6", "--lemma", "CP"])
