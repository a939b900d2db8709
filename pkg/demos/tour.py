"""A short walk through the package on a few small loops."""
from loopforge.bruck import TauAut, glauberman_folder, is_bruck_folder, tau_on_group
from loopforge.corpus import theorem1_example
from loopforge.folder import envelope, folders_isomorphic, loop_of_folder
from loopforge.library import involutions_of, odd_groups
from loopforge.loop import cyclic_loop, is_bruck
from loopforge.structure import decompose, is_solvable_loop, theorem1_verify, theorem2_verify


def main():
    X = theorem1_example()
    f = envelope(X)
    print(f"C3 x B8: order {X.n}, Bruck {is_bruck(X)}, |G| = {f.group.m}, |H| = {len(f.H)}")
    print("  l(envelope) == X:", loop_of_folder(f) == X)
    print("  tau moves", sum(i != j for i, j in enumerate(tau_on_group(f).image)), "group elements")
    d = decompose(X)
    print("  O(X) =", d.witnesses["O"].members, " |O2(X)| =", len(d.witnesses["O2"].members))
    print("  theorem1 passed:", theorem1_verify(X).passed, " theorem2 passed:", theorem2_verify(X).passed)
    print("  series orders:", [t.order for t in is_solvable_loop(X).terms])

    og = next(g for g in odd_groups(81) if g.name == "C5^2:C3")
    for t in involutions_of(og):
        tau = TauAut(og.group, t)
        mu = glauberman_folder(og.group, tau)
        Y = loop_of_folder(mu)
        if Y.associative:
            continue
        print(f"Glauberman loop from {og.name}: order {Y.n}, Bruck folder {is_bruck_folder(mu)}")
        print("  envelope isomorphic to the folder:", folders_isomorphic(envelope(Y), mu) is not None)
        break

    print("C15 theorem2 passed:", theorem2_verify(cyclic_loop(15)).passed)


if __name__ == "__main__":
    main()
