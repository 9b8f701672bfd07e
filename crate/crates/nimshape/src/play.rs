//! Interactive text play against the engine.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::engine::{Convention, Engine, EngineError};
use crate::parse;
use crate::position::SumPosition;
use crate::strategy::{best_move_misere, best_move_normal, StrategyError};

#[derive(Debug, Error)]
pub enum PlayError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HumanSide {
    First,
    Second,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SessionWinner {
    Human,
    Engine,
}

/// Everything the session printed, plus the result. `aborted` is set when
/// the input ended before the game did; the partial transcript is kept.
#[derive(Clone, Debug)]
pub struct Transcript {
    pub lines: Vec<String>,
    pub winner: Option<SessionWinner>,
    pub aborted: bool,
}

/// Runs a move-by-move session on `input`/`output`. The human enters moves
/// in removal notation (`rm rows 2,3 of 1`, `rm cols 1`, `set side 2 of 1
/// to 4`); illegal moves re-prompt with the violated rule. The engine
/// replies with its best move under the convention. Whoever moves to the
/// final terminal position wins under normal play and loses under misère.
pub fn play_session(
    engine: &Engine,
    start: SumPosition,
    convention: Convention,
    human_side: HumanSide,
    input: &mut dyn BufRead,
    output: &mut dyn Write,
) -> Result<Transcript, PlayError> {
    let mut transcript = Transcript {
        lines: Vec::new(),
        winner: None,
        aborted: false,
    };
    fn say(
        output: &mut dyn Write,
        transcript: &mut Transcript,
        line: String,
    ) -> std::io::Result<()> {
        writeln!(output, "{line}")?;
        transcript.lines.push(line);
        Ok(())
    }

    let convention_name = match convention {
        Convention::Normal => "normal",
        Convention::Misere => "misere",
    };
    say(
        output,
        &mut transcript,
        format!(
            "position {start} ({convention_name} play; you move {})",
            match human_side {
                HumanSide::First => "first",
                HumanSide::Second => "second",
            }
        ),
    )?;

    let mut pos = start;
    let mut human_to_move = human_side == HumanSide::First;

    loop {
        if pos.is_terminal() {
            // the previous mover ended the game; under misère that mover lost
            let last_mover_is_human = !human_to_move;
            let last_mover_wins = convention == Convention::Normal;
            let human_wins = last_mover_is_human == last_mover_wins;
            let reason = if last_mover_is_human {
                "you made the last move"
            } else {
                "the engine made the last move"
            };
            say(
                output,
                &mut transcript,
                format!(
                    "winner: {} ({reason}; last move {} under {convention_name} play)",
                    if human_wins { "you" } else { "engine" },
                    if last_mover_wins { "wins" } else { "loses" },
                ),
            )?;
            transcript.winner = Some(if human_wins {
                SessionWinner::Human
            } else {
                SessionWinner::Engine
            });
            return Ok(transcript);
        }

        if human_to_move {
            write!(output, "> ")?;
            output.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                say(
                    output,
                    &mut transcript,
                    "session aborted (end of input)".to_string(),
                )?;
                transcript.aborted = true;
                return Ok(transcript);
            }
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let command = match parse::move_command(line) {
                Ok(c) => c,
                Err(e) => {
                    say(output, &mut transcript, format!("illegal move: {e}"))?;
                    continue;
                }
            };
            let descriptor = match command.resolve(&pos) {
                Ok(d) => d,
                Err(e) => {
                    say(output, &mut transcript, format!("illegal move: {e}"))?;
                    continue;
                }
            };
            let next = match pos.apply(&descriptor) {
                Ok(p) => p,
                Err(e) => {
                    say(output, &mut transcript, format!("illegal move: {e}"))?;
                    continue;
                }
            };
            say(
                output,
                &mut transcript,
                format!("you: {} -> {next}", descriptor.notation(&pos)),
            )?;
            pos = next;
        } else {
            let advice = match convention {
                Convention::Normal => best_move_normal(engine, &pos)?,
                Convention::Misere => best_move_misere(engine, &pos)?,
            };
            debug_assert!(
                pos.successors().contains(&advice.successor),
                "engine move must be legal"
            );
            say(
                output,
                &mut transcript,
                format!(
                    "engine: {} -> {}",
                    advice.descriptor.notation(&pos),
                    advice.successor
                ),
            )?;
            pos = advice.successor;
        }
        human_to_move = !human_to_move;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn run(start: &str, convention: Convention, side: HumanSide, input: &str) -> Transcript {
        let engine = Engine::new();
        let mut input = Cursor::new(input.to_string());
        let mut output = Vec::new();
        play_session(
            &engine,
            start.parse().unwrap(),
            convention,
            side,
            &mut input,
            &mut output,
        )
        .unwrap()
    }

    #[test]
    fn misere_forced_loss_on_single_cell() {
        let t = run(
            "[1]",
            Convention::Misere,
            HumanSide::First,
            "rm rows 1 of 1\n",
        );
        assert_eq!(t.winner, Some(SessionWinner::Engine));
        assert!(t
            .lines
            .iter()
            .any(|l| l.contains("you: rm rows 1 of 1 -> []")));
    }

    #[test]
    fn engine_wins_misere_two_by_two_as_second_player() {
        // [2,2] is misère-losing for the mover; whatever the human does the
        // engine converts
        for human_script in [
            "rm rows 1 of 1\nrm rows 1 of 1\nrm cols 1 of 1\n",
            "rm cols 2 of 1\nrm rows 1 of 1\nrm rows 1 of 1\nrm cols 1 of 1\n",
        ] {
            let t = run("[2,2]", Convention::Misere, HumanSide::First, human_script);
            assert_eq!(
                t.winner,
                Some(SessionWinner::Engine),
                "script {human_script:?}"
            );
        }
    }

    #[test]
    fn engine_mirrors_two_equal_piles() {
        let t = run(
            "[3]+[3]",
            Convention::Normal,
            HumanSide::First,
            "rm rows 1 of 1\nrm rows 1 of 2\n",
        );
        // after the human empties pile 1 the engine empties pile 2 and wins
        assert_eq!(t.winner, Some(SessionWinner::Engine));
    }

    #[test]
    fn illegal_moves_reprompt_with_the_rule() {
        let t = run(
            "[1]",
            Convention::Normal,
            HumanSide::First,
            "rm rows 5 of 1\nnonsense\nrm rows 1 of 1\n",
        );
        assert_eq!(t.winner, Some(SessionWinner::Human));
        let illegal = t
            .lines
            .iter()
            .filter(|l| l.starts_with("illegal move:"))
            .count();
        assert_eq!(illegal, 2);
    }

    #[test]
    fn eof_aborts_with_partial_transcript() {
        let t = run("[2]", Convention::Normal, HumanSide::First, "");
        assert!(t.aborted);
        assert_eq!(t.winner, None);
        assert!(t.lines.last().unwrap().contains("aborted"));
    }

    #[test]
    fn engine_moves_first_when_human_is_second() {
        let t = run("[1]", Convention::Normal, HumanSide::Second, "");
        // the engine takes the only cell and wins under normal play
        assert_eq!(t.winner, Some(SessionWinner::Engine));
        assert!(!t.aborted);
    }
}
