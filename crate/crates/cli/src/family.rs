//! Group family specs for `gen`.

use anyhow::{anyhow, bail, ensure, Context, Result};
use extiso::abelian::primary_decomposition;
use extiso::builders::{baer_group, reconstruct_abelian, BilinearMap};
use extiso::cayley::{direct_product, families, matrix_group, parse_table, perm_group, CayleyGroup};
use extiso::cohomology::{CochainMatrix, ColumnLayout, ExtensionData};
use extiso::linalg::{gfp, is_prime, pow_mod};
use extiso::Caps;
use std::path::Path;
use std::sync::Arc;

pub const FAMILIES: &str = "cyclic N | abelian N... | elem-abelian P K | dihedral N | symmetric D | alternating D | \
quaternion | dicyclic N | sl2 P | semidirect N M R | baer FILE | baer P K L I,J=V... | central-ext QFILE MATRIXFILE | \
from-generators perm DEGREE IMAGES... | from-generators matrix P D ENTRIES... | direct-product FILE FILE...";

fn num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| anyhow!("expected a number, got {s:?}"))
}

fn nums<T: std::str::FromStr>(s: &str, sep: char) -> Result<Vec<T>> {
    s.split(|c: char| c == sep || c.is_whitespace()).filter(|t| !t.is_empty()).map(num).collect()
}

fn arity(args: &[String], n: usize, usage: &str) -> Result<()> {
    ensure!(args.len() == n, "usage: {usage}");
    Ok(())
}

pub fn read_group(path: &Path) -> Result<CayleyGroup> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_table(&text)?)
}

/// Builds the group named by `spec`, the family followed by its arguments.
pub fn build(spec: &[String], caps: &Caps) -> Result<CayleyGroup> {
    let (family, args) = spec.split_first().ok_or_else(|| anyhow!("missing family; one of: {FAMILIES}"))?;
    let positive = |s: &str| -> Result<usize> {
        let n: usize = num(s)?;
        ensure!(n >= 1, "{s} must be positive");
        Ok(n)
    };
    let fits = |n: u128| -> Result<()> {
        ensure!(n <= caps.group_order as u128, "order {n} exceeds the group order cap {}", caps.group_order);
        Ok(())
    };
    let g = match family.as_str() {
        "cyclic" => {
            arity(args, 1, "cyclic N")?;
            let n = positive(&args[0])?;
            fits(n as u128)?;
            families::cyclic(n)
        }
        "abelian" => {
            ensure!(!args.is_empty(), "usage: abelian N...");
            let ns = args.iter().map(|a| positive(a)).collect::<Result<Vec<_>>>()?;
            fits(ns.iter().try_fold(1u128, |acc, &n| acc.checked_mul(n as u128)).unwrap_or(u128::MAX))?;
            families::abelian(&ns)
        }
        "elem-abelian" => {
            arity(args, 2, "elem-abelian P K")?;
            let p: u64 = num(&args[0])?;
            ensure!(is_prime(p), "{p} is not prime");
            let k: u32 = num(&args[1])?;
            fits((p as u128).checked_pow(k).unwrap_or(u128::MAX))?;
            families::elementary_abelian(p as usize, k as usize)
        }
        "dihedral" => {
            arity(args, 1, "dihedral N")?;
            let n = positive(&args[0])?;
            fits(2 * n as u128)?;
            families::dihedral(n)
        }
        "symmetric" | "alternating" => {
            arity(args, 1, &format!("{family} D"))?;
            let d = positive(&args[0])?;
            ensure!(d <= 7, "degree {d} too large");
            if family == "symmetric" { families::symmetric(d) } else { families::alternating(d) }
        }
        "quaternion" => {
            arity(args, 0, "quaternion")?;
            families::quaternion()
        }
        "dicyclic" => {
            arity(args, 1, "dicyclic N")?;
            let n = positive(&args[0])?;
            fits(4 * n as u128)?;
            families::dicyclic(n)
        }
        "sl2" => {
            arity(args, 1, "sl2 P")?;
            let p: u64 = num(&args[0])?;
            ensure!(is_prime(p), "{p} is not prime");
            matrix_group(p, 2, &[vec![1, 1, 0, 1], vec![0, p - 1, 1, 0]], caps.group_order)?
        }
        "semidirect" => {
            arity(args, 3, "semidirect N M R")?;
            let (n, m, r) = (positive(&args[0])?, positive(&args[1])?, num::<usize>(&args[2])?);
            fits(n as u128 * m as u128)?;
            ensure!(pow_mod(r as u64, m as u64, n as u64) == 1 % n as u64, "{r}^{m} is not 1 mod {n}");
            families::cyclic_semidirect(n, m, r)
        }
        "baer" => {
            let b = bilinear(args)?;
            fits((b.p as u128).checked_pow((b.k + b.l) as u32).unwrap_or(u128::MAX))?;
            baer_group(&b)?
        }
        "central-ext" => {
            arity(args, 2, "central-ext QFILE MATRIXFILE")?;
            central_ext(Path::new(&args[0]), Path::new(&args[1]))?
        }
        "from-generators" => from_generators(args, caps)?,
        "direct-product" => {
            ensure!(args.len() >= 2, "usage: direct-product FILE FILE...");
            let parts = args.iter().map(|a| read_group(Path::new(a))).collect::<Result<Vec<_>>>()?;
            fits(parts.iter().try_fold(1u128, |acc, g| acc.checked_mul(g.order() as u128)).unwrap_or(u128::MAX))?;
            parts[1..].iter().fold(parts[0].clone(), |acc, g| direct_product(&acc, g))
        }
        other => bail!("unknown family {other:?}; one of: {FAMILIES}"),
    };
    ensure!(g.order() <= caps.group_order, "order {} exceeds the group order cap {}", g.order(), caps.group_order);
    Ok(g)
}

/// `FILE`, or `P K L` followed by `I,J=V` entries with 1-based basis indices;
/// `f(e_J, e_I) = -f(e_I, e_J)` is filled in.
fn bilinear(args: &[String]) -> Result<BilinearMap> {
    if args.len() == 1 {
        let text = std::fs::read_to_string(&args[0]).with_context(|| format!("reading {}", args[0]))?;
        return Ok(BilinearMap::parse(&text)?);
    }
    ensure!(args.len() >= 3, "usage: baer FILE | baer P K L I,J=V...");
    let (p, k, l): (u64, usize, usize) = (num(&args[0])?, num(&args[1])?, num(&args[2])?);
    ensure!(p >= 2, "bad prime {p}");
    let mut values = vec![vec![vec![0u64; k]; l]; l];
    for e in &args[3..] {
        let (ij, v) = e.split_once('=').ok_or_else(|| anyhow!("entry {e:?} is not I,J=V"))?;
        let idx: Vec<usize> = nums(ij, ',')?;
        let v: Vec<u64> = nums(v, ',')?;
        ensure!(idx.len() == 2 && idx.iter().all(|&i| (1..=l).contains(&i)), "bad indices in {e:?}");
        ensure!(v.len() == k, "entry {e:?} needs {k} values");
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        values[i][j] = v.iter().map(|x| x % p).collect();
        values[j][i] = v.iter().map(|x| (p - x % p) % p).collect();
    }
    Ok(BilinearMap::new(p, k, l, values)?)
}

/// Central extension of the quotient in `qfile` by the coefficients named
/// by the matrix moduli, with the cocycle read from `mfile`.
fn central_ext(qfile: &Path, mfile: &Path) -> Result<CayleyGroup> {
    let q = Arc::new(read_group(qfile)?);
    let text = std::fs::read_to_string(mfile).with_context(|| format!("reading {}", mfile.display()))?;
    let m = CochainMatrix::parse(&text)?;
    ensure!(m.layout == ColumnLayout::Full { q_order: q.order() }, "matrix columns do not match the quotient order");
    let moduli: Vec<usize> = m.moduli.iter().map(|&d| d as usize).collect();
    let a = primary_decomposition(Arc::new(families::abelian(&moduli)))?;
    ensure!(a.orders() == m.moduli.as_slice(), "moduli must be prime powers sorted by prime, then exponent");
    let n = q.order();
    let action = vec![extiso::abelian::AbelianAut::identity(a.rank()); n];
    let ed = ExtensionData::from_values(a, q, action, |x, y| m.rows.iter().map(|r| r[x * n + y]).collect());
    Ok(reconstruct_abelian(&ed)?)
}

fn from_generators(args: &[String], caps: &Caps) -> Result<CayleyGroup> {
    let usage = "from-generators perm DEGREE IMAGES... | from-generators matrix P D ENTRIES...";
    match args.first().map(String::as_str) {
        Some("perm") => {
            ensure!(args.len() >= 2, "usage: {usage}");
            let degree = num::<usize>(&args[1])?;
            let gens: Vec<Vec<usize>> = args[2..].iter().map(|g| nums(g, ',')).collect::<Result<_>>()?;
            for g in &gens {
                let mut seen = vec![false; degree];
                ensure!(g.len() == degree && g.iter().all(|&x| x < degree && !std::mem::replace(&mut seen[x], true)), "{g:?} is not a permutation of 0..{degree}");
            }
            Ok(perm_group(degree, &gens, caps.group_order)?)
        }
        Some("matrix") => {
            ensure!(args.len() >= 3, "usage: {usage}");
            let (p, d): (u64, usize) = (num(&args[1])?, num(&args[2])?);
            ensure!(is_prime(p), "{p} is not prime");
            let gens: Vec<Vec<u64>> = args[3..].iter().map(|g| nums(g, ',')).collect::<Result<_>>()?;
            ensure!(gens.iter().all(|g| g.len() == d * d), "each generator needs {} entries", d * d);
            for g in &gens {
                let m: Vec<Vec<u32>> = g.chunks(d).map(|r| r.iter().map(|&x| (x % p) as u32).collect()).collect();
                ensure!(gfp::inverse(p, &m).is_some(), "{g:?} is singular mod {p}");
            }
            Ok(matrix_group(p, d, &gens, caps.group_order)?)
        }
        _ => bail!("usage: {usage}"),
    }
}
