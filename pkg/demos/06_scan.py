# Scanning |G(sigma + it)| along vertical lines: zeros show up only at sigma = 1/2.
# Run: python demos/06_scan.py

from zetaflow import scan

# %%
rep = scan.scan_vhat(0.5, 10, 35)
print("sigma = 0.5 minima:")
for t, v in rep.local_minima:
    print(f"  t = {t:.6f}  |G| = {v:.1e}")

# %%
# Off the line the minima stay positive; Newton from each one either finds
# nothing or a zero back on Re = 1/2.
rep = scan.scan_vhat(0.75, 0, 50)
print("sigma = 0.75 floor", rep.positive_floor)
for t, v in rep.local_minima[:6]:
    print(f"  t = {t:.4f}  |G| = {v:.1e}  witness {scan.zero_witness(0.75, t)}")

# |Gamma| decays like exp(-pi t / 2), so raw minima shrink with t whatever eta does.
