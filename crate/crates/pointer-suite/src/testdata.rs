//! Frozen worked examples shared by unit tests across modules.
//!
//! The long vectors were traced by hand once and are pinned here; any
//! behavioral drift in oracles or metrics must fail against them.

/// Small pointer-chain input: bare start, bare first neighbor, two chain
/// links, a free chain of three, and two same-affix decoy words.
pub const SMALL_PEN_INPUT: &str =
    "ab xy nb3ac xy2wv fq0zz xy5wv ab4fq wv7ql rt8gt ry4up ac3rt wv5ql";
pub const SMALL_PEN_ANSWER: &str = "xy wv7ql xy5wv";

/// Minimal four-word chain input and its expected outputs.
pub const TINY_PEN_INPUT: &str = "ab xy ab4fq wv7ql";
pub const TINY_PEN_ANSWER: &str = "xy wv7ql";

/// 62-word question-format example with decoys on every non-terminal link.
pub const BIG_PEN_INPUT: &str = "xv ke vu7bh sb0fz xy5ih eo7sf ay7of xd3nj zs7bt eo1sf jn6yc \
xd5nj od3nk br2ny yc2pr ls5sg nv1zs sb5fz uy7vu sf1zv bh6ia sg5dg ux6oc zv4xd ya1yk br5ny \
wc4xy ke5fm jw1dx ny7sb wq2mm fz6eo nk2nv sf5zv pr3ya fz4eo yk0dk fm4br oc4wc nj0ls ih1uy \
di7fw mm2pq zv7xd of7wq nj4ls xv7gn ls6sg dx0ux vz7uc ah7od sg4dg sn2jw ae5ce ia7jn zw4ed \
bt5ay fm6br pq6kw ny3sb gn4ah ke0fm";
pub const BIG_PEN_ANSWER: &str =
    "ke ls6sg ke0fm sg4dg br2ny sf5zv sb5fz eo1sf fm6br xd3nj nj4ls fz6eo zv7xd ny3sb";

/// Reverse-multicount worked example with a 7-word chain, an 8-word decoy
/// cycle, a self-loop, and a dead-end word.
pub const PERM_A_INPUT: &str = "kp0ms gg0hy pk0tq go0ey mf0kp ms0jd hl0go vu0vu vl0gg bn0vl \
ar0pk tq0bn jd0hl hy0jm ey0oy oy0mf gy0do | ar0pk";
pub const PERM_A_ANSWER: &str = "hy0jm.24 gg0hy.20 vl0gg.12 bn0vl.6 tq0bn.2 pk0tq.1 ar0pk.0";

/// Reverse-multicount worked example whose chain covers every listed word
/// except one dead-end.
pub const PERM_B_INPUT: &str = "vs0ep xv0tx me0xt xx0ds ds0re re0rm tx0tg sh0vs xt0bw pf0ss \
gh0sh ep0me bw0xv rm0gh ss0pf kh0of | xx0ds";
pub const PERM_B_ANSWER: &str = "tx0tg.60 xv0tx.55 bw0xv.40 xt0bw.36 me0xt.32 ep0me.21 \
vs0ep.18 sh0vs.10 gh0sh.4 rm0gh.0 re0rm.0 ds0re.0 xx0ds.0";

/// Short reverse-multicount example: two matches, one of them leftward.
pub const PERM_C_INPUT: &str = "ud0xg wp0mr yy0uo xg0yy sr0mw pg0yg oq0zt mw0oq uo0bt ep0ep \
rs0av bt0oi oi0ud mr0pg oc0wp av0oc tz0tb yg0tz tb0rs vk0sx | sr0mw";
pub const PERM_C_ANSWER: &str = "oq0zt.2 mw0oq.0 sr0mw.0";
