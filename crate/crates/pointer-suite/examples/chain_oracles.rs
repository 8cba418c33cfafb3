//! Walk the two chain oracles step by step on small hand-checkable inputs:
//! the neighbor chain (match a word's last two characters to another word's
//! first two, output the right neighbor) and the counted permutation chain.
//!
//! Run with: `cargo run --example chain_oracles`

use pointer_suite::pen::oracle_pen;
use pointer_suite::perm::{multicount, oracle_perm, split_perm_input};
use pointer_suite::word::{find_matches_from, right_neighbor, Seq};

const PEN_INPUT: &str = "ab xy nb3ac xy2wv fq0zz xy5wv ab4fq wv7ql rt8gt ry4up ac3rt wv5ql";

const PERM_INPUT: &str = "kp0ms gg0hy pk0tq go0ey mf0kp ms0jd hl0go vu0vu vl0gg bn0vl \
                          ar0pk tq0bn jd0hl hy0jm ey0oy oy0mf gy0do | ar0pk";

fn main() -> pointer_suite::Result<()> {
    println!("== neighbor chain ==");
    println!("input: {PEN_INPUT}\n");
    let seq = Seq::parse(PEN_INPUT)?;
    let mut position = 0;
    println!(
        "start at the leftmost word {:?}; its right neighbor {:?} opens the answer",
        seq.words()[0].render(),
        seq.words()[1].render()
    );
    loop {
        let matches = find_matches_from(&seq, position);
        let Some(&next) = matches.first() else {
            println!(
                "{:?} ends in \"{}\" and no word starts with that: done",
                seq.words()[position].render(),
                seq.words()[position].suffix_key()
            );
            break;
        };
        let matched = seq.words()[next].render();
        let neighbor = right_neighbor(&seq, next).unwrap().render();
        println!(
            "{:?} points at {matched:?}; its right neighbor {neighbor:?} is the next output",
            seq.words()[position].render(),
        );
        position = next;
    }
    println!("answer: {}\n", oracle_pen(&seq)?.join(" "));

    println!("== counted permutation chain ==");
    println!("input: {PERM_INPUT}\n");
    let (list, start) = split_perm_input(PERM_INPUT)?;
    let mut positions = vec![list.position_of(&start).unwrap()];
    loop {
        let here = *positions.last().unwrap();
        match find_matches_from(&list, here).first() {
            Some(&next) => {
                let direction = if next < here { "a left match" } else { "a right match" };
                println!(
                    "{:?} -> {:?} ({direction}: position {} -> {})",
                    list.words()[here].render(),
                    list.words()[next].render(),
                    here + 1,
                    next + 1
                );
                positions.push(next);
            }
            None => break,
        }
    }
    let counts = multicount(&positions);
    println!("\nper word: left-matches-so-far * matches-so-far = value");
    for (step, &p) in positions.iter().enumerate() {
        println!(
            "  {}: {}*{} = {}",
            list.words()[p].render(),
            counts.left[step],
            step,
            counts.values[step]
        );
    }
    println!(
        "\nanswer (reversed, word.value): {}",
        oracle_perm(&list, &start)?.join(" ")
    );
    Ok(())
}
