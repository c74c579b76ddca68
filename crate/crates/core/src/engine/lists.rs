// SPDX-License-Identifier: Apache-2.0

//! Arena-backed linked lists indexed by a dense slot number (`node * k + label`).

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Ends {
    head: u32,
    tail: u32,
    len: u32,
}

impl Ends {
    const EMPTY: Ends = Ends {
        head: NIL,
        tail: NIL,
        len: 0,
    };
}

#[derive(Debug, Clone, Copy)]
struct FwdCell {
    val: u32,
    next: u32,
}

/// Singly linked lists with O(1) append, O(1) concatenation and O(1) clear.
/// Entries are plain node ids and may repeat.
#[derive(Debug, Clone)]
pub(crate) struct ConcatLists {
    ends: Vec<Ends>,
    cells: Vec<FwdCell>,
    free: u32,
}

impl ConcatLists {
    pub(crate) fn new(slots: usize) -> Self {
        ConcatLists {
            ends: vec![Ends::EMPTY; slots],
            cells: Vec::new(),
            free: NIL,
        }
    }

    fn alloc(&mut self, val: usize) -> u32 {
        let cell = FwdCell {
            val: val as u32,
            next: NIL,
        };
        if self.free != NIL {
            let id = self.free;
            self.free = self.cells[id as usize].next;
            self.cells[id as usize] = cell;
            id
        } else {
            self.cells.push(cell);
            (self.cells.len() - 1) as u32
        }
    }

    pub(crate) fn len(&self, slot: usize) -> usize {
        self.ends[slot].len as usize
    }

    pub(crate) fn push_back(&mut self, slot: usize, val: usize) {
        let c = self.alloc(val);
        let e = &mut self.ends[slot];
        if e.tail == NIL {
            e.head = c;
        } else {
            let t = e.tail;
            self.cells[t as usize].next = c;
        }
        let e = &mut self.ends[slot];
        e.tail = c;
        e.len += 1;
    }

    pub(crate) fn clear(&mut self, slot: usize) {
        let e = std::mem::replace(&mut self.ends[slot], Ends::EMPTY);
        if e.head != NIL {
            self.cells[e.tail as usize].next = self.free;
            self.free = e.head;
        }
    }

    pub(crate) fn set_single(&mut self, slot: usize, val: usize) {
        self.clear(slot);
        self.push_back(slot, val);
    }

    /// Moves the whole of `src` in front of `dst`, leaving `src` empty.
    pub(crate) fn splice_front(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = std::mem::replace(&mut self.ends[src], Ends::EMPTY);
        if s.head == NIL {
            return;
        }
        let d = self.ends[dst];
        if d.head == NIL {
            self.ends[dst] = s;
        } else {
            self.cells[s.tail as usize].next = d.head;
            self.ends[dst] = Ends {
                head: s.head,
                tail: d.tail,
                len: s.len + d.len,
            };
        }
    }

    pub(crate) fn iter(&self, slot: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = self.ends[slot].head;
        std::iter::from_fn(move || {
            if cur == NIL {
                return None;
            }
            let c = self.cells[cur as usize];
            cur = c.next;
            Some(c.val as usize)
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    val: u32,
    prev: u32,
    next: u32,
}

/// Handle to an element of an [`AdjLists`] list.
pub(crate) type CellId = u32;

/// Doubly linked adjacency lists, newest element at the head. Elements are
/// addressed by the handle returned from [`AdjLists::push_head`], which
/// allows O(1) removal and neighbor access.
#[derive(Debug, Clone)]
pub(crate) struct AdjLists {
    ends: Vec<Ends>,
    cells: Vec<Cell>,
    free: Vec<u32>,
}

impl AdjLists {
    pub(crate) fn new(slots: usize) -> Self {
        AdjLists {
            ends: vec![Ends::EMPTY; slots],
            cells: Vec::new(),
            free: Vec::new(),
        }
    }

    pub(crate) fn len(&self, slot: usize) -> usize {
        self.ends[slot].len as usize
    }

    pub(crate) fn head(&self, slot: usize) -> Option<usize> {
        let h = self.ends[slot].head;
        (h != NIL).then(|| self.cells[h as usize].val as usize)
    }

    pub(crate) fn tail_cell(&self, slot: usize) -> Option<CellId> {
        let t = self.ends[slot].tail;
        (t != NIL).then_some(t)
    }

    pub(crate) fn val(&self, c: CellId) -> usize {
        self.cells[c as usize].val as usize
    }

    /// Neighbor toward the head.
    pub(crate) fn prev(&self, c: CellId) -> Option<CellId> {
        let p = self.cells[c as usize].prev;
        (p != NIL).then_some(p)
    }

    /// Neighbor toward the tail.
    pub(crate) fn next(&self, c: CellId) -> Option<CellId> {
        let n = self.cells[c as usize].next;
        (n != NIL).then_some(n)
    }

    pub(crate) fn push_head(&mut self, slot: usize, val: usize) -> CellId {
        let old = self.ends[slot].head;
        let cell = Cell {
            val: val as u32,
            prev: NIL,
            next: old,
        };
        let c = match self.free.pop() {
            Some(id) => {
                self.cells[id as usize] = cell;
                id
            }
            None => {
                self.cells.push(cell);
                (self.cells.len() - 1) as u32
            }
        };
        let e = &mut self.ends[slot];
        if old == NIL {
            e.tail = c;
        } else {
            self.cells[old as usize].prev = c;
        }
        let e = &mut self.ends[slot];
        e.head = c;
        e.len += 1;
        c
    }

    pub(crate) fn remove(&mut self, slot: usize, c: CellId) {
        let Cell { prev, next, .. } = self.cells[c as usize];
        if prev == NIL {
            self.ends[slot].head = next;
        } else {
            self.cells[prev as usize].next = next;
        }
        if next == NIL {
            self.ends[slot].tail = prev;
        } else {
            self.cells[next as usize].prev = prev;
        }
        self.ends[slot].len -= 1;
        self.free.push(c);
    }

    /// Values from head to tail.
    pub(crate) fn iter(&self, slot: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = self.ends[slot].head;
        std::iter::from_fn(move || {
            if cur == NIL {
                return None;
            }
            let c = self.cells[cur as usize];
            cur = c.next;
            Some(c.val as usize)
        })
    }
}
